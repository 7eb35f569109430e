#include "rfed/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "rfed/core/errors.hpp"
#include "rfed/engine/rfedags.hpp"
#include "rfed/harness/csv.hpp"
#include "rfed/harness/metrics.hpp"
#include "rfed/problems/mtfl.hpp"
#include "rfed/solvers/reference.hpp"

namespace rfed {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("nan");
}

std::uint64_t start_seed(const RunConfig& config, const Dataset& dataset) {
  if (config.init_seed) return *config.init_seed;
  return dataset.generator.value("seed", std::uint64_t{0});
}

}  // namespace

void ExperimentSpec::validate() const {
  if (generator.has_value() == data.has_value()) {
    throw ParameterError("experiment: give exactly one of 'problem' and 'data'");
  }
  if (sweep.empty()) throw ParameterError("experiment: sweep must be non-empty");
  for (long k : sweep) {
    if (k < 1) throw ParameterError("experiment: every K in the sweep must be >= 1");
  }
  if (repeats < 1) throw ParameterError("experiment: repeats must be >= 1");
  if (output.empty()) throw ParameterError("experiment: output directory missing");
  if (threshold && !(*threshold > 0.0)) throw ParameterError("experiment: threshold must be > 0");
  config.validate();
}

ExperimentSpec experiment_spec_from_json(const json& j, const std::filesystem::path& base_dir) {
  ExperimentSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      static const std::vector<std::string> allowed = {
          "problem", "data", "config", "sweep", "repeats", "output", "threshold", "reference"};
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ParameterError("experiment: unknown key '" + key + "'");
      }
    }
    if (j.contains("problem")) spec.generator = j.at("problem");
    if (j.contains("data")) spec.data = resolve(j.at("data").get<std::string>(), base_dir);
    spec.config = run_config_from_json(j.at("config"));
    spec.sweep = j.contains("sweep") ? j.at("sweep").get<std::vector<long>>()
                                     : std::vector<long>{spec.config.K};
    spec.repeats = j.value("repeats", 1L);
    spec.output = resolve(j.at("output").get<std::string>(), base_dir);
    if (j.contains("threshold")) spec.threshold = j.at("threshold").get<double>();
    if (j.contains("reference")) {
      const json& r = j.at("reference");
      spec.compute_reference = r.value("compute", true);
      spec.reference_solver.max_iters = r.value("max_iters", spec.reference_solver.max_iters);
      spec.reference_solver.grad_tol = r.value("grad_tol", spec.reference_solver.grad_tol);
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("experiment: ") + e.what());
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return experiment_spec_from_json(j, path.parent_path());
}

std::string trace_file_name(const std::string& problem, long K, std::uint64_t seed) {
  return problem + "_K" + std::to_string(K) + "_seed" + std::to_string(seed) + ".csv";
}

MetricReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Dataset dataset = spec.data ? load_dataset(*spec.data) : synthesize(*spec.generator);
  return run_experiment(spec, dataset);
}

MetricReport run_experiment(const ExperimentSpec& spec, const Dataset& dataset) {
  spec.validate();
  const FederatedProblem& problem = *dataset.problem;
  const Manifold& manifold = problem.manifold();
  const auto* mtfl = dynamic_cast<const MtflProblem*>(&problem);

  for (long K : spec.sweep) {
    RunConfig config = spec.config;
    config.K = K;
    config.validate(problem);
  }

  MetricReport report;
  report.problem = to_string(problem.kind());
  if (dataset.reference) {
    report.f_star = dataset.reference->cost;
  } else if (spec.compute_reference) {
    report.f_star = compute_reference(problem, spec.reference_solver).cost;
  }

  std::filesystem::create_directories(spec.output);
  const Point x0 = problem.initial_point(start_seed(spec.config, dataset));
  const double f0 = problem.cost(x0);
  const double g0 = manifold.norm(x0, problem.gradient(x0));

  for (long K : spec.sweep) {
    for (long r = 0; r < spec.repeats; ++r) {
      CellReport cell;
      cell.K = K;
      cell.seed = spec.config.seed + static_cast<std::uint64_t>(r);
      RunConfig config = spec.config;
      config.K = K;
      config.seed = cell.seed;

      const std::string name = trace_file_name(report.problem, K, cell.seed);
      cell.trace_file = spec.output / name;
      CsvTable metrics{{"t", "subspace_dist", "nmse"}, {}};
      Point last = x0;
      auto observe = [&](const TraceRecord& rec, const Point& x) {
        cell.trace.push_back(rec);
        last = x;
        if (mtfl) {
          const std::optional<double> dist =
              mtfl->ground_truth() ? std::optional(subspace_distance(x.value, *mtfl->ground_truth()))
                                   : std::nullopt;
          metrics.rows.push_back(
              {std::to_string(rec.t), optional_cell(dist), format_double(mtfl_nmse(*mtfl, x.value))});
        }
      };
      try {
        run_federated(problem, config, x0, report.f_star, observe);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
        std::cerr << "cell K=" << K << " seed=" << cell.seed << " failed: " << e.what() << '\n';
      }
      cell.rounds = static_cast<long>(cell.trace.size());
      if (cell.trace.empty()) {
        cell.final_F = f0;
        cell.final_grad_norm = g0;
      } else {
        cell.final_F = cell.trace.back().F;
        cell.final_grad_norm = cell.trace.back().grad_norm;
      }
      cell.final_excess = report.f_star ? cell.final_F - *report.f_star : std::nan("");
      if (mtfl) {
        if (mtfl->ground_truth()) {
          cell.final_subspace_distance = subspace_distance(last.value, *mtfl->ground_truth());
        }
        try {
          cell.final_nmse = mtfl_nmse(*mtfl, last.value);
        } catch (const DomainError&) {
        }
      }
      try {
        write_trace_csv(cell.trace_file, cell.trace);
        if (mtfl) {
          write_csv(spec.output / (name.substr(0, name.size() - 4) + "_metrics.csv"), metrics);
        }
      } catch (const Error& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      report.cells.push_back(std::move(cell));
    }
  }

  if (spec.threshold) {
    report.threshold = *spec.threshold;
  } else {
    double worst = 0.0;
    for (const CellReport& c : report.cells) {
      if (c.ok && std::isfinite(c.final_excess)) worst = std::max(worst, c.final_excess);
    }
    report.threshold = 10.0 * worst;
  }
  const double initial_excess = report.f_star ? f0 - *report.f_star : std::nan("");
  for (CellReport& c : report.cells) {
    if (!report.f_star) continue;
    if (initial_excess <= report.threshold) {
      c.rounds_to_threshold = 0;
      continue;
    }
    std::vector<double> excess;
    excess.reserve(c.trace.size());
    for (const TraceRecord& rec : c.trace) excess.push_back(rec.excess);
    c.rounds_to_threshold = first_round_at_or_below(excess, report.threshold);
  }

  CsvTable summary{{"problem", "K", "seed", "status", "rounds", "final_F", "final_excess",
                    "final_grad_norm", "threshold", "rounds_to_threshold", "final_nmse",
                    "final_subspace_dist", "error"},
                   {}};
  for (const CellReport& c : report.cells) {
    std::string error = c.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    summary.rows.push_back({report.problem, std::to_string(c.K), std::to_string(c.seed),
                            c.ok ? "ok" : "failed", std::to_string(c.rounds),
                            format_double(c.final_F), format_double(c.final_excess),
                            format_double(c.final_grad_norm), format_double(report.threshold),
                            c.rounds_to_threshold ? std::to_string(*c.rounds_to_threshold) : "",
                            optional_cell(c.final_nmse), optional_cell(c.final_subspace_distance),
                            error});
  }
  report.summary_file = spec.output / "summary.csv";
  write_csv(report.summary_file, summary);
  return report;
}

}  // namespace rfed
