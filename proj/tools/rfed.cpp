// rfed: synthesize datasets, compute reference optima, run and sweep federated
// experiments, and run the geometry/gradient property checks.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfed/core/errors.hpp"
#include "rfed/engine/conditions.hpp"
#include "rfed/harness/check.hpp"
#include "rfed/harness/csv.hpp"
#include "rfed/harness/experiment.hpp"
#include "rfed/harness/multitask_csv.hpp"
#include "rfed/problems/dataset_io.hpp"
#include "rfed/solvers/reference.hpp"

namespace {

using nlohmann::json;

struct SynthArgs {
  std::string problem;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<long> d, n, p, m, r, S, N;
  std::optional<double> eigengap, diameter, noise, lambda;
  std::string from_csv;
  double split = 0.8;
  bool with_reference = false;
};

void set_if(json& j, const char* key, const auto& value) {
  if (value) j[key] = *value;
}

int synth(const SynthArgs& a) {
  rfed::Dataset dataset;
  if (!a.from_csv.empty()) {
    if (a.problem != "mtfl") throw rfed::ParameterError("--from-csv only applies to mtfl");
    rfed::MultitaskLoadOptions o;
    o.split = a.split;
    o.seed = a.seed.value_or(1);
    o.num_agents = a.S.value_or(1);
    o.tasks_per_agent = a.N.value_or(1);
    o.r = a.r.value_or(1);
    o.lambda = a.lambda.value_or(0.0);
    rfed::MultitaskData data = rfed::load_multitask_csv(a.from_csv, o);
    dataset.problem = data.problem;
    dataset.generator = {{"kind", "mtfl"}, {"source", a.from_csv}, {"split", o.split},
                         {"seed", o.seed}, {"S", o.num_agents},    {"N", o.tasks_per_agent},
                         {"r", o.r},       {"lambda", o.lambda},   {"dropped", json::array()}};
    for (const auto& f : data.dropped) dataset.generator["dropped"].push_back(f.filename().string());
  } else {
    json g = {{"kind", a.problem}};
    set_if(g, "seed", a.seed);
    set_if(g, "d", a.d);
    set_if(g, "n", a.n);
    set_if(g, "p", a.p);
    set_if(g, "m", a.m);
    set_if(g, "r", a.r);
    set_if(g, "S", a.S);
    set_if(g, "N", a.N);
    set_if(g, "eigengap", a.eigengap);
    set_if(g, "diameter", a.diameter);
    set_if(g, "noise_std", a.noise);
    set_if(g, "lambda", a.lambda);
    dataset = rfed::synthesize(g);
  }
  if (a.with_reference) dataset.reference = rfed::compute_reference(*dataset.problem);
  rfed::save_dataset(dataset, a.out);
  std::cout << "wrote " << a.out << " (" << rfed::to_string(dataset.problem->kind())
            << ", S=" << dataset.problem->num_agents()
            << ", N=" << dataset.problem->samples_per_agent() << ")\n";
  return 0;
}

int reference(const std::string& data, const std::string& out, const rfed::SolverConfig& solver) {
  rfed::Dataset dataset = rfed::load_dataset(data);
  dataset.reference = rfed::compute_reference(*dataset.problem, solver);
  rfed::save_dataset(dataset, out);
  std::cout << "F* = " << rfed::format_double(dataset.reference->cost)
            << "  |grad| = " << rfed::format_double(dataset.reference->grad_norm) << "  ("
            << dataset.reference->method << ")\n";
  return 0;
}

void print_conditions(const rfed::RunConfig& config) {
  if (!config.diagnostics) return;
  const double alpha = rfed::step_size(config.step, 0);
  const rfed::ConditionReport report =
      rfed::check_stepsize_conditions(*config.diagnostics, alpha, config.K);
  for (const auto& c : report.conditions) {
    std::cout << "condition " << c.name << " [" << c.formula << "]: " << rfed::to_string(c.status);
    if (c.status == rfed::ConditionStatus::kNotEvaluable) {
      std::cout << " (missing " << c.missing << ")";
    } else {
      std::cout << " margin " << rfed::format_double(c.margin);
    }
    std::cout << '\n';
  }
}

void print_report(const rfed::MetricReport& report) {
  std::cout << "problem " << report.problem << ", F* = "
            << (report.f_star ? rfed::format_double(*report.f_star) : "unknown") << '\n';
  for (const auto& c : report.cells) {
    std::cout << "K=" << c.K << " seed=" << c.seed << ' ' << (c.ok ? "ok" : "FAILED")
              << " rounds=" << c.rounds << " F=" << rfed::format_double(c.final_F)
              << " excess=" << rfed::format_double(c.final_excess);
    if (c.final_subspace_distance) {
      std::cout << " dist=" << rfed::format_double(*c.final_subspace_distance);
    }
    if (c.final_nmse) std::cout << " nmse=" << rfed::format_double(*c.final_nmse);
    if (!c.ok) std::cout << " error: " << c.error;
    std::cout << '\n';
  }
  std::cout << "summary: " << report.summary_file.string() << '\n';
}

int all_cells_ok(const rfed::MetricReport& report) {
  const bool ok = std::all_of(report.cells.begin(), report.cells.end(),
                              [](const rfed::CellReport& c) { return c.ok; });
  return ok ? 0 : rfed::exit_code(rfed::ErrorCategory::kRun);
}

int run(const std::string& data, const std::string& config_path, const std::string& out) {
  rfed::ExperimentSpec spec;
  spec.data = data;
  spec.config = rfed::load_run_config(config_path);
  spec.sweep = {spec.config.K};
  spec.repeats = 1;
  spec.output = out;
  print_conditions(spec.config);
  const rfed::MetricReport report = rfed::run_experiment(spec);
  print_report(report);
  return all_cells_ok(report);
}

int sweep(const std::string& spec_path) {
  const rfed::ExperimentSpec spec = rfed::load_experiment_spec(spec_path);
  print_conditions(spec.config);
  const rfed::MetricReport report = rfed::run_experiment(spec);
  print_report(report);
  return all_cells_ok(report);
}

int check(std::uint64_t seed, int cases, int points, bool skip_gradients) {
  std::vector<rfed::CheckResult> results = rfed::run_geometry_suite(seed, cases);
  if (!skip_gradients) {
    auto g = rfed::run_gradient_suite(seed, points);
    results.insert(results.end(), g.begin(), g.end());
  }
  rfed::print_check_table(std::cout, results);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const rfed::CheckResult& r) { return r.passed; });
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated optimization on Riemannian manifolds"};
  app.require_subcommand(1);
  app.footer("Worker threads per round: RFED_WORKERS (default: hardware concurrency).");

  SynthArgs sa;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
  synth_cmd->add_option("--problem", sa.problem, "cpesph, cfmspd, mbcfsti or mtfl")
      ->required()
      ->check(CLI::IsMember({"cpesph", "cfmspd", "mbcfsti", "mtfl"}));
  synth_cmd->add_option("--out", sa.out, "output file (.json for text, CBOR otherwise)")
      ->required();
  synth_cmd->add_option("--seed", sa.seed, "generator seed");
  synth_cmd->add_option("--d", sa.d, "sphere dimension / Stiefel rows");
  synth_cmd->add_option("--n", sa.n, "SPD matrix size");
  synth_cmd->add_option("--p", sa.p, "Stiefel columns");
  synth_cmd->add_option("--m", sa.m, "feature count");
  synth_cmd->add_option("--r", sa.r, "subspace dimension");
  synth_cmd->add_option("--S", sa.S, "number of agents");
  synth_cmd->add_option("--N", sa.N, "samples (tasks) per agent");
  synth_cmd->add_option("--eigengap", sa.eigengap, "CPESph eigengap v");
  synth_cmd->add_option("--diameter", sa.diameter, "CFMSPD data diameter");
  synth_cmd->add_option("--noise", sa.noise, "MTFL label noise standard deviation");
  synth_cmd->add_option("--lambda", sa.lambda, "MTFL ridge weight");
  synth_cmd->add_option("--from-csv", sa.from_csv, "load MTFL tasks from a directory of CSVs");
  synth_cmd->add_option("--split", sa.split, "training fraction per task for --from-csv");
  synth_cmd->add_flag("--with-reference", sa.with_reference, "also store the reference optimum");

  std::string ref_data, ref_out;
  rfed::SolverConfig solver;
  auto* ref_cmd = app.add_subcommand("reference", "compute and store the reference optimum");
  ref_cmd->add_option("--data", ref_data)->required();
  ref_cmd->add_option("--out", ref_out)->required();
  ref_cmd->add_option("--max-iters", solver.max_iters);
  ref_cmd->add_option("--grad-tol", solver.grad_tol);

  std::string run_data, run_config, run_out;
  auto* run_cmd = app.add_subcommand("run", "run one configuration on a dataset");
  run_cmd->add_option("--data", run_data)->required();
  run_cmd->add_option("--config", run_config)->required();
  run_cmd->add_option("--out", run_out, "output directory")->required();

  std::string spec_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment spec over K values and seeds");
  sweep_cmd->add_option("--spec", spec_path)->required();

  std::uint64_t check_seed = 1;
  int check_cases = 100, check_points = 20;
  bool skip_gradients = false;
  auto* check_cmd = app.add_subcommand("check", "geometry and gradient property suites");
  check_cmd->add_option("--seed", check_seed);
  check_cmd->add_option("--cases", check_cases, "random cases per geometry check");
  check_cmd->add_option("--points", check_points, "random points per gradient check");
  check_cmd->add_flag("--geometry-only", skip_gradients);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rfed::exit_code(rfed::ErrorCategory::kParameter);
  }

  try {
    if (*synth_cmd) return synth(sa);
    if (*ref_cmd) return reference(ref_data, ref_out, solver);
    if (*run_cmd) return run(run_data, run_config, run_out);
    if (*sweep_cmd) return sweep(spec_path);
    if (*check_cmd) return check(check_seed, check_cases, check_points, skip_gradients);
  } catch (const rfed::Error& e) {
    std::cerr << "error (" << rfed::to_string(e.category()) << "): " << e.what() << '\n';
    return rfed::exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
