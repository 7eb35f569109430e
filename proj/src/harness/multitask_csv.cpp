#include "rfed/harness/multitask_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "rfed/core/errors.hpp"
#include "rfed/core/rng.hpp"

namespace rfed {

namespace {

constexpr std::uint64_t kSplitStreamTag = 0x73706c6974;  // "split"

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    if (first == std::string::npos) return false;
    const char* b = cell.data() + first;
    const char* e = cell.data() + last + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) return false;
    out.push_back(v);
  }
  return !out.empty();
}

Matrix read_task_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!parse_row(line, row)) {
      if (first) {
        first = false;
        continue;
      }
      throw FormatError(path.string() + ": non-numeric row '" + line + "'");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError(path.string() + ": ragged rows (" + std::to_string(row.size()) + " vs " +
                        std::to_string(rows.front().size()) + " columns)");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw FormatError(path.string() + ": no data rows");
  if (rows.front().size() < 2) throw FormatError(path.string() + ": need features and a label");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][j];
  }
  return m;
}

TaskRecord take_rows(const Matrix& data, const std::vector<Index>& idx) {
  const Index m = data.cols() - 1;
  TaskRecord t{Matrix(static_cast<Index>(idx.size()), m), Vector(static_cast<Index>(idx.size()))};
  for (std::size_t i = 0; i < idx.size(); ++i) {
    t.X.row(static_cast<Index>(i)) = data.row(idx[i]).head(m);
    t.y(static_cast<Index>(i)) = data(idx[i], m);
  }
  return t;
}

}  // namespace

MultitaskData load_multitask_csv(const std::filesystem::path& dir,
                                 const MultitaskLoadOptions& o) {
  if (!(o.split > 0.0 && o.split <= 1.0)) {
    throw ParameterError("multitask loader: split must be in (0, 1]");
  }
  if (o.num_agents < 1 || o.tasks_per_agent < 1) {
    throw ParameterError("multitask loader: S and N must be >= 1");
  }
  if (!std::filesystem::is_directory(dir)) throw IoError(dir.string() + " is not a directory");

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  const auto needed = static_cast<std::size_t>(o.num_agents * o.tasks_per_agent);
  if (files.size() < needed) {
    throw ParameterError("multitask loader: " + std::to_string(files.size()) +
                         " task files but S * N = " + std::to_string(needed));
  }

  MultitaskData out;
  out.used.assign(files.begin(), files.begin() + static_cast<std::ptrdiff_t>(needed));
  out.dropped.assign(files.begin() + static_cast<std::ptrdiff_t>(needed), files.end());
  for (const auto& f : out.dropped) {
    std::cerr << "multitask loader: dropping task " << f.filename().string() << '\n';
  }

  std::vector<std::vector<TaskRecord>> train(static_cast<std::size_t>(o.num_agents));
  std::vector<std::vector<TaskRecord>> test(static_cast<std::size_t>(o.num_agents));
  Index width = -1;
  for (std::size_t task = 0; task < out.used.size(); ++task) {
    const Matrix data = read_task_file(out.used[task]);
    if (width < 0) width = data.cols();
    if (data.cols() != width) {
      throw FormatError(out.used[task].string() + ": " + std::to_string(data.cols() - 1) +
                        " features, expected " + std::to_string(width - 1));
    }
    std::vector<Index> idx(static_cast<std::size_t>(data.rows()));
    std::iota(idx.begin(), idx.end(), Index{0});
    Rng rng({o.seed, static_cast<std::uint64_t>(task), kSplitStreamTag});
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n = static_cast<Index>(idx.size());
    const Index n_train =
        o.split >= 1.0 ? n : std::clamp<Index>(std::llround(o.split * static_cast<double>(n)), 1, n);
    const std::vector<Index> train_idx(idx.begin(), idx.begin() + n_train);
    const std::vector<Index> test_idx(idx.begin() + n_train, idx.end());
    const std::size_t agent = task / static_cast<std::size_t>(o.tasks_per_agent);
    train[agent].push_back(take_rows(data, train_idx));
    test[agent].push_back(take_rows(data, test_idx));
  }

  out.problem = std::make_shared<MtflProblem>(std::move(train), o.r, o.lambda);
  if (o.split < 1.0) out.problem->set_test_tasks(std::move(test));
  return out;
}

}  // namespace rfed
