#include "rfed/engine/config.hpp"

#include <fstream>
#include <set>

#include "rfed/core/errors.hpp"
#include "rfed/problems/problem.hpp"

namespace rfed {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw ParameterError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ParameterError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const char* to_string(Aggregation aggregation) {
  return aggregation == Aggregation::kGradientStream ? "gradient_stream" : "tangent_mean";
}

const char* to_string(RetractionMode mode) {
  return mode == RetractionMode::kCheap ? "cheap" : "exact_exp";
}

void RunConfig::validate() const {
  if (T < 0) throw ParameterError("config: T must be >= 0");
  if (S < 1) throw ParameterError("config: S must be >= 1");
  if (K < 1) throw ParameterError("config: K must be >= 1");
  rfed::validate(step);
  rfed::validate(batch);
  if (diagnostics) diagnostics->validate();
}

void RunConfig::validate(const FederatedProblem& problem) const {
  validate();
  if (S != problem.num_agents()) {
    throw ParameterError("config: S = " + std::to_string(S) + " but the data has " +
                         std::to_string(problem.num_agents()) + " agents");
  }
  const Manifold& m = problem.manifold();
  if (retraction == RetractionMode::kExactExp && !m.has_exp()) {
    throw ParameterError("config: exact_exp mode needs an exponential map on " + m.name());
  }
  if (aggregation == Aggregation::kTangentMean && !(m.has_exp() && m.has_log())) {
    throw ParameterError("config: tangent_mean aggregation needs exp and log on " + m.name());
  }
}

json to_json(const StepSchedule& step) {
  return std::visit(
      Overloaded{
          [](const FixedStep& s) { return json{{"kind", "fixed"}, {"alpha", s.alpha}}; },
          [](const DecayingStep& s) {
            return json{{"kind", "decaying"}, {"alpha0", s.alpha0},   {"beta", s.beta},
                        {"dec", s.every},     {"verbatim", s.verbatim}};
          },
          [](const TheoremDecayStep& s) {
            return json{{"kind", "theorem_decay"}, {"kappa", s.kappa}, {"gamma", s.gamma}};
          },
      },
      step);
}

StepSchedule step_schedule_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fixed") {
    reject_unknown_keys(j, {"kind", "alpha"}, "step");
    return FixedStep{j.at("alpha").get<double>()};
  }
  if (kind == "decaying") {
    reject_unknown_keys(j, {"kind", "alpha0", "beta", "dec", "verbatim"}, "step");
    return DecayingStep{j.at("alpha0").get<double>(), j.at("beta").get<double>(),
                        j.at("dec").get<long>(), j.value("verbatim", false)};
  }
  if (kind == "theorem_decay") {
    reject_unknown_keys(j, {"kind", "kappa", "gamma"}, "step");
    return TheoremDecayStep{j.at("kappa").get<double>(), j.at("gamma").get<double>()};
  }
  throw ParameterError("step: unknown kind '" + kind + "'");
}

json to_json(const BatchSchedule& batch) {
  switch (batch.kind) {
    case BatchSchedule::Kind::kFixed:
      return {{"kind", "fixed"}, {"size", batch.size}};
    case BatchSchedule::Kind::kBounded:
      return {{"kind", "bounded"}, {"sizes", batch.sizes}};
    case BatchSchedule::Kind::kFull:
      return {{"kind", "full"}};
  }
  return {};
}

BatchSchedule batch_schedule_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fixed") {
    reject_unknown_keys(j, {"kind", "size"}, "batch");
    return BatchSchedule::fixed(j.at("size").get<Index>());
  }
  if (kind == "bounded") {
    reject_unknown_keys(j, {"kind", "sizes"}, "batch");
    return BatchSchedule::bounded(j.at("sizes").get<std::vector<Index>>());
  }
  if (kind == "full") {
    reject_unknown_keys(j, {"kind"}, "batch");
    return BatchSchedule::full();
  }
  throw ParameterError("batch: unknown kind '" + kind + "'");
}

json to_json(const DiagnosticsConfig& d) {
  json j = json::object();
  if (d.L) j["L"] = *d.L;
  if (d.M) j["M"] = *d.M;
  if (d.delta) j["delta"] = *d.delta;
  if (d.sigma2) j["sigma2"] = *d.sigma2;
  if (d.mu) j["mu"] = *d.mu;
  return j;
}

DiagnosticsConfig diagnostics_from_json(const json& j) {
  reject_unknown_keys(j, {"L", "M", "delta", "sigma2", "mu"}, "diagnostics");
  DiagnosticsConfig d;
  auto read = [&j](const char* key, std::optional<double>& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
  };
  read("L", d.L);
  read("M", d.M);
  read("delta", d.delta);
  read("sigma2", d.sigma2);
  read("mu", d.mu);
  return d;
}

json to_json(const RunConfig& c) {
  json j = {{"T", c.T},
            {"S", c.S},
            {"K", c.K},
            {"step", to_json(c.step)},
            {"batch", to_json(c.batch)},
            {"aggregation", to_string(c.aggregation)},
            {"retraction", to_string(c.retraction)},
            {"seed", c.seed},
            {"record_wall_time", c.record_wall_time}};
  if (c.init_seed) j["init_seed"] = *c.init_seed;
  if (c.diagnostics) j["diagnostics"] = to_json(*c.diagnostics);
  return j;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig c;
  try {
    reject_unknown_keys(j,
                        {"T", "S", "K", "step", "batch", "aggregation", "retraction", "seed",
                         "init_seed", "record_wall_time", "diagnostics"},
                        "config");
    c.T = j.at("T").get<long>();
    c.S = j.at("S").get<Index>();
    c.K = j.at("K").get<long>();
    c.step = step_schedule_from_json(j.at("step"));
    c.batch = batch_schedule_from_json(j.at("batch"));
    const std::string agg = j.value("aggregation", std::string("gradient_stream"));
    if (agg == "gradient_stream") {
      c.aggregation = Aggregation::kGradientStream;
    } else if (agg == "tangent_mean") {
      c.aggregation = Aggregation::kTangentMean;
    } else {
      throw ParameterError("config: unknown aggregation '" + agg + "'");
    }
    const std::string mode = j.value("retraction", std::string("cheap"));
    if (mode == "cheap") {
      c.retraction = RetractionMode::kCheap;
    } else if (mode == "exact_exp") {
      c.retraction = RetractionMode::kExactExp;
    } else {
      throw ParameterError("config: unknown retraction mode '" + mode + "'");
    }
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("init_seed")) c.init_seed = j.at("init_seed").get<std::uint64_t>();
    c.record_wall_time = j.value("record_wall_time", false);
    if (j.contains("diagnostics")) c.diagnostics = diagnostics_from_json(j.at("diagnostics"));
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace rfed
