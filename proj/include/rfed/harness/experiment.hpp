#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfed/engine/config.hpp"
#include "rfed/problems/dataset_io.hpp"
#include "rfed/solvers/rsd.hpp"

namespace rfed {

struct ExperimentSpec {
  // Either generator parameters ({"kind": ..., ...}) or a dataset file.
  std::optional<nlohmann::json> generator;
  std::optional<std::filesystem::path> data;
  RunConfig config;
  std::vector<long> sweep;  // K values; each overrides config.K
  long repeats = 1;         // algorithm seeds config.seed, config.seed + 1, ...
  std::filesystem::path output;
  // Rounds-to-threshold level; 10x the largest final excess of the sweep when absent.
  std::optional<double> threshold;
  // Compute the reference optimum when the dataset does not carry one.
  bool compute_reference = true;
  SolverConfig reference_solver;

  void validate() const;
};

// Relative paths in the file are resolved against its directory.
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir = {});

struct CellReport {
  long K = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  long rounds = 0;
  double final_F = 0.0;
  double final_excess = 0.0;
  double final_grad_norm = 0.0;
  std::optional<long> rounds_to_threshold;
  std::optional<double> final_nmse;
  std::optional<double> final_subspace_distance;
  std::vector<TraceRecord> trace;
  std::filesystem::path trace_file;
};

struct MetricReport {
  std::string problem;
  std::optional<double> f_star;
  double threshold = 0.0;
  std::vector<CellReport> cells;  // sweep-major, then seed
  std::filesystem::path summary_file;
};

std::string trace_file_name(const std::string& problem, long K, std::uint64_t seed);

// Runs every (K, seed) cell, writes one trace CSV per cell (plus a metrics CSV
// for multitask problems) and summary.csv into spec.output. A failing cell is
// recorded and the rest still run.
MetricReport run_experiment(const ExperimentSpec& spec);
MetricReport run_experiment(const ExperimentSpec& spec, const Dataset& dataset);

}  // namespace rfed
