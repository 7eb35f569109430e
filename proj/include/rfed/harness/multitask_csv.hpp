#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "rfed/problems/mtfl.hpp"

namespace rfed {

struct MultitaskLoadOptions {
  double split = 0.8;  // training fraction per task
  std::uint64_t seed = 1;
  Index num_agents = 1;
  Index tasks_per_agent = 1;
  Index r = 1;
  double lambda = 0.0;
};

struct MultitaskData {
  std::shared_ptr<MtflProblem> problem;
  std::vector<std::filesystem::path> used;     // in task order
  std::vector<std::filesystem::path> dropped;  // tasks past S * N
};

// One CSV per task in `dir` (sorted by file name), each row holding m feature
// values then the label; a non-numeric first line is taken as a header. Rows
// of every task are shuffled with a per-task stream and split into train and
// test parts; tasks are grouped in file order into agents, and any tasks
// beyond S * N are dropped and reported on stderr.
MultitaskData load_multitask_csv(const std::filesystem::path& dir,
                                 const MultitaskLoadOptions& options);

}  // namespace rfed
