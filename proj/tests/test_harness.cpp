#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rfed/core/errors.hpp"
#include "rfed/core/rng.hpp"
#include "rfed/harness/check.hpp"
#include "rfed/harness/csv.hpp"
#include "rfed/harness/experiment.hpp"
#include "rfed/harness/metrics.hpp"
#include "rfed/harness/multitask_csv.hpp"
#include "rfed/problems/dataset_io.hpp"
#include "rfed/problems/mtfl.hpp"

namespace fs = std::filesystem;

namespace rfed {
namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rfed_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Metrics, Nmse) {
  const double truth[] = {1.0, 2.0, 3.0, 4.0};
  EXPECT_EQ(nmse(truth, truth), 0.0);
  const double mean_pred[] = {2.5, 2.5, 2.5, 2.5};
  EXPECT_NEAR(nmse(mean_pred, truth), 1.0, 1e-15);
  const double shifted[] = {2.0, 3.0, 4.0, 5.0};
  EXPECT_NEAR(nmse(shifted, truth), 1.0 / 1.25, 1e-15);
  const double flat[] = {1.0, 1.0};
  EXPECT_THROW(nmse(flat, flat), DomainError);
  const double one[] = {1.0};
  EXPECT_THROW(nmse(one, one), ParameterError);
  EXPECT_THROW(nmse(std::span(truth, 3), std::span(truth, 4)), ParameterError);
}

TEST(Metrics, SubspaceDistance) {
  Matrix e1 = Matrix::Zero(3, 1), e2 = Matrix::Zero(3, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  EXPECT_NEAR(subspace_distance(e1, e2), M_PI / 2, 1e-12);
  EXPECT_NEAR(subspace_distance(e1, -e1), 0.0, 1e-7);
  Matrix tilt(3, 1);
  tilt << std::cos(0.3), std::sin(0.3), 0.0;
  EXPECT_NEAR(subspace_distance(tilt, e1), 0.3, 1e-12);
  EXPECT_THROW(subspace_distance(e1, Matrix::Zero(3, 2)), ParameterError);
}

TEST(Metrics, FirstRoundAtOrBelow) {
  const double v[] = {5.0, 3.0, 1.0, 0.5, 2.0};
  EXPECT_EQ(first_round_at_or_below(v, 1.0), 3);
  EXPECT_EQ(first_round_at_or_below(v, 5.0), 1);
  EXPECT_FALSE(first_round_at_or_below(v, 0.1).has_value());
}

TEST(Metrics, MtflPredictionsAtTruthAreExact) {
  const MtflProblem p = make_mtfl(12, 2, 2, 3, 0.0, 0.0, 1);
  EXPECT_LT(mtfl_nmse(p, *p.ground_truth()), 1e-20);
  Rng rng(2);
  EXPECT_GT(mtfl_nmse(p, p.manifold().random_point(rng).value), 1e-3);
}

TEST(Csv, FormatDouble) {
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  for (double v : {0.1, -3.25e-17, 1e300, 123456.789}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Csv, TraceRoundTrip) {
  const fs::path dir = fresh_dir("csv");
  std::vector<TraceRecord> trace = {{1, -0.5, 1e-3, 0.2, 1.0, 64, 0.01},
                                    {2, -0.6, std::nan(""), 0.1, 0.9, 64, 0.02}};
  write_trace_csv(dir / "t.csv", trace);
  EXPECT_EQ(slurp(dir / "t.csv").substr(0, std::string(kTraceHeader).size()), kTraceHeader);
  const auto back = read_trace_csv(dir / "t.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].F, -0.5);
  EXPECT_EQ(back[0].excess, 1e-3);
  EXPECT_TRUE(std::isnan(back[1].excess));
  EXPECT_EQ(back[1].B, 64);
  EXPECT_EQ(back[1].elapsed_s, 0.02);
  {
    std::ofstream(dir / "bad.csv") << "a,b\n1,2\n";
  }
  EXPECT_THROW(read_trace_csv(dir / "bad.csv"), FormatError);
  EXPECT_THROW(read_csv(dir / "missing.csv"), IoError);
  {
    std::ofstream(dir / "ragged.csv") << "a,b\n1\n";
  }
  EXPECT_THROW(read_csv(dir / "ragged.csv"), FormatError);
}

ExperimentSpec small_spec(const fs::path& out) {
  ExperimentSpec s;
  s.generator = nlohmann::json{{"kind", "cpesph"}, {"d", 8}, {"S", 3}, {"N", 20}, {"eigengap", 0.05}};
  s.config.T = 15;
  s.config.S = 3;
  s.config.step = FixedStep{0.5};
  s.config.batch = BatchSchedule::fixed(4);
  s.sweep = {1, 2};
  s.repeats = 2;
  s.output = out;
  return s;
}

TEST(Experiment, WritesTracesAndSummary) {
  const fs::path out = fresh_dir("exp");
  const MetricReport r = run_experiment(small_spec(out));
  ASSERT_TRUE(r.f_star.has_value());
  ASSERT_EQ(r.cells.size(), 4u);
  EXPECT_EQ(r.cells[0].K, 1);
  EXPECT_EQ(r.cells[1].seed, 2u);
  EXPECT_EQ(r.cells[2].K, 2);
  for (const CellReport& c : r.cells) {
    EXPECT_TRUE(c.ok);
    const auto trace = read_trace_csv(c.trace_file);
    ASSERT_EQ(trace.size(), 15u);
    for (const auto& rec : trace) EXPECT_NEAR(rec.excess, rec.F - *r.f_star, 1e-15);
    EXPECT_EQ(c.trace_file.filename(), trace_file_name("cpesph", c.K, c.seed));
  }
  const CsvTable summary = read_csv(r.summary_file);
  EXPECT_EQ(summary.header.front(), "problem");
  EXPECT_EQ(summary.rows.size(), 4u);
  EXPECT_EQ(summary.rows[0][3], "ok");
}

TEST(Experiment, ZeroRoundsStillSummarizes) {
  const fs::path out = fresh_dir("exp_t0");
  ExperimentSpec s = small_spec(out);
  s.config.T = 0;
  s.sweep = {1};
  s.repeats = 1;
  const MetricReport r = run_experiment(s);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].rounds, 0);
  EXPECT_TRUE(read_trace_csv(r.cells[0].trace_file).empty());
  EXPECT_EQ(read_csv(r.summary_file).rows.size(), 1u);
}

TEST(Experiment, RerunIsByteIdentical) {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  run_experiment(small_spec(a));
  run_experiment(small_spec(b));
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
    ++files;
  }
  EXPECT_EQ(files, 5);
}

TEST(Experiment, FailingCellDoesNotStopTheSweep) {
  const fs::path out = fresh_dir("exp_fail");
  fs::create_directories(out / trace_file_name("cpesph", 1, 1));
  const MetricReport r = run_experiment(small_spec(out));
  ASSERT_EQ(r.cells.size(), 4u);
  EXPECT_FALSE(r.cells[0].ok);
  EXPECT_FALSE(r.cells[0].error.empty());
  for (std::size_t i = 1; i < 4; ++i) EXPECT_TRUE(r.cells[i].ok);
  EXPECT_EQ(read_csv(r.summary_file).rows[0][3], "failed");
}

TEST(Experiment, MtflWritesMetrics) {
  const fs::path out = fresh_dir("exp_mtfl");
  ExperimentSpec s;
  s.generator = nlohmann::json{{"kind", "mtfl"}, {"m", 10}, {"r", 2}, {"S", 2}, {"N", 3}};
  s.config.T = 5;
  s.config.S = 2;
  s.config.step = FixedStep{1e-3};
  s.sweep = {2};
  s.output = out;
  s.compute_reference = false;
  const MetricReport r = run_experiment(s);
  EXPECT_FALSE(r.f_star.has_value());
  ASSERT_TRUE(r.cells[0].final_subspace_distance.has_value());
  const CsvTable m = read_csv(out / "mtfl_K2_seed1_metrics.csv");
  EXPECT_EQ(m.header, (std::vector<std::string>{"t", "subspace_dist", "nmse"}));
  EXPECT_EQ(m.rows.size(), 5u);
}

TEST(Experiment, SpecParsing) {
  const fs::path dir = fresh_dir("spec");
  const nlohmann::json j = {
      {"problem", {{"kind", "cfmspd"}, {"S", 2}}},
      {"config", {{"T", 3}, {"S", 2}, {"K", 1}, {"step", {{"kind", "fixed"}, {"alpha", 0.1}}},
                  {"batch", {{"kind", "full"}}}}},
      {"sweep", {1, 4}},
      {"repeats", 3},
      {"output", "out"}};
  const ExperimentSpec s = experiment_spec_from_json(j, dir);
  EXPECT_EQ(s.output, dir / "out");
  EXPECT_EQ(s.sweep, (std::vector<long>{1, 4}));
  EXPECT_EQ(s.repeats, 3);
  nlohmann::json bad = j;
  bad["extra"] = true;
  EXPECT_THROW(experiment_spec_from_json(bad, dir), ParameterError);
  bad = j;
  bad["data"] = "x.json";
  EXPECT_THROW(experiment_spec_from_json(bad, dir).validate(), ParameterError);
  bad = j;
  bad["sweep"] = nlohmann::json::array();
  EXPECT_THROW(experiment_spec_from_json(bad, dir).validate(), ParameterError);
}

void write_task(const fs::path& p, int rows, int features, std::uint64_t seed, bool header) {
  std::ofstream out(p);
  if (header) {
    for (int f = 0; f < features; ++f) out << "x" << f << ",";
    out << "y\n";
  }
  Rng rng(seed);
  for (int i = 0; i < rows; ++i) {
    for (int f = 0; f <= features; ++f) out << (f ? "," : "") << rng.normal();
    out << "\n";
  }
}

TEST(MultitaskCsv, LoadsSplitsAndDrops) {
  const fs::path dir = fresh_dir("tasks");
  for (int t = 0; t < 139; ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "task%03d.csv", t);
    write_task(dir / name, 10 + t % 7, 4, static_cast<std::uint64_t>(t), t % 2 == 0);
  }
  MultitaskLoadOptions o;
  o.num_agents = 6;
  o.tasks_per_agent = 23;
  o.r = 2;
  const MultitaskData d = load_multitask_csv(dir, o);
  EXPECT_EQ(d.used.size(), 138u);
  ASSERT_EQ(d.dropped.size(), 1u);
  EXPECT_EQ(d.dropped[0].filename(), "task138.csv");
  EXPECT_EQ(d.problem->num_agents(), 6);
  EXPECT_EQ(d.problem->samples_per_agent(), 23);
  ASSERT_TRUE(d.problem->test_tasks().has_value());
  const TaskRecord& first = d.problem->agent_tasks()[0][0];
  EXPECT_EQ(first.X.cols(), 4);
  EXPECT_EQ(first.X.rows() + (*d.problem->test_tasks())[0][0].X.rows(), 10);
  EXPECT_EQ(first.X.rows(), 8);

  const MultitaskData again = load_multitask_csv(dir, o);
  EXPECT_EQ(again.problem->agent_tasks()[3][5].y, d.problem->agent_tasks()[3][5].y);

  o.split = 1.0;
  const MultitaskData all = load_multitask_csv(dir, o);
  EXPECT_FALSE(all.problem->test_tasks().has_value());
  EXPECT_EQ(all.problem->agent_tasks()[0][0].X.rows(), 10);

  o.num_agents = 7;
  o.tasks_per_agent = 20;
  EXPECT_THROW(load_multitask_csv(dir, o), ParameterError);
}

TEST(MultitaskCsv, RejectsMalformedFiles) {
  const fs::path dir = fresh_dir("tasks_bad");
  write_task(dir / "a.csv", 5, 3, 1, false);
  {
    std::ofstream(dir / "b.csv") << "1,2,3,4\n5,6,7\n";
  }
  MultitaskLoadOptions o;
  o.num_agents = 2;
  try {
    load_multitask_csv(dir, o);
    FAIL() << "expected a FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("b.csv"), std::string::npos);
  }
  EXPECT_THROW(load_multitask_csv(dir / "nope", o), IoError);
  o.split = 0.0;
  EXPECT_THROW(load_multitask_csv(dir, o), ParameterError);
}

TEST(CheckSuites, GeometryPasses) {
  const auto results = run_geometry_suite(3, 20);
  EXPECT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.suite << "/" << r.name << ": " << r.detail;
}

#ifdef RFED_CLI_PATH
int cli(const std::string& args) {
  const std::string cmd = std::string(RFED_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = fresh_dir("cli");
  const std::string data = (dir / "d.json").string();
  EXPECT_EQ(cli("synth --problem cpesph --d 6 --S 2 --N 10 --out " + data), 0);
  EXPECT_EQ(cli("synth --problem nothing --out " + data), 2);
  EXPECT_EQ(cli("reference --data " + (dir / "missing.json").string() + " --out x.json"), 8);
  {
    std::ofstream(dir / "junk.json") << "{\"format\": 1}";
  }
  EXPECT_EQ(cli("reference --data " + (dir / "junk.json").string() + " --out x.json"), 6);
  {
    std::ofstream(dir / "c.json") << R"({"T": 3, "S": 2, "K": 2, "step": {"kind": "fixed", "alpha": 0.1},
      "batch": {"kind": "fixed", "size": 2}, "diagnostics": {"L": 1, "M": 1, "delta": 0.5}})";
    std::ofstream(dir / "c_bad.json") << R"({"T": 3, "S": 5, "K": 2, "step": {"kind": "fixed", "alpha": 0.1},
      "batch": {"kind": "fixed", "size": 2}})";
  }
  EXPECT_EQ(cli("run --data " + data + " --config " + (dir / "c.json").string() + " --out " +
                (dir / "run").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "run" / "summary.csv"));
  EXPECT_EQ(cli("run --data " + data + " --config " + (dir / "c_bad.json").string() + " --out " +
                (dir / "run2").string()),
            2);
  EXPECT_NE(cli("run --data " + data), 0);
}
#endif

}  // namespace
}  // namespace rfed
