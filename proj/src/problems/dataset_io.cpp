#include "rfed/problems/dataset_io.hpp"

#include <fstream>
#include <iterator>

#include "rfed/core/errors.hpp"
#include "rfed/problems/cfmspd.hpp"
#include "rfed/problems/cpesph.hpp"
#include "rfed/problems/mbcfsti.hpp"
#include "rfed/problems/mtfl.hpp"

namespace rfed {

using nlohmann::json;

namespace {

constexpr const char* kFormatName = "rfed-dataset";
constexpr int kFormatVersion = 1;

template <typename T>
T field(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

json tasks_to_json(const std::vector<std::vector<TaskRecord>>& tasks) {
  json agents = json::array();
  for (const auto& agent : tasks) {
    json list = json::array();
    for (const TaskRecord& t : agent) {
      list.push_back({{"X", matrix_to_json(t.X)}, {"y", matrix_to_json(t.y)}});
    }
    agents.push_back(std::move(list));
  }
  return agents;
}

std::vector<std::vector<TaskRecord>> tasks_from_json(const json& agents) {
  std::vector<std::vector<TaskRecord>> tasks;
  for (const json& list : agents) {
    auto& agent = tasks.emplace_back();
    for (const json& t : list) {
      const Matrix y = matrix_from_json(t.at("y"));
      agent.push_back({matrix_from_json(t.at("X")), y.reshaped()});
    }
  }
  return tasks;
}

json matrix_lists_to_json(const std::vector<std::vector<Matrix>>& lists) {
  json agents = json::array();
  for (const auto& agent : lists) {
    json list = json::array();
    for (const Matrix& m : agent) list.push_back(matrix_to_json(m));
    agents.push_back(std::move(list));
  }
  return agents;
}

std::vector<std::vector<Matrix>> matrix_lists_from_json(const json& agents) {
  std::vector<std::vector<Matrix>> lists;
  for (const json& list : agents) {
    auto& agent = lists.emplace_back();
    for (const json& m : list) agent.push_back(matrix_from_json(m));
  }
  return lists;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.data(), m.data() + m.size())}};
}

Matrix matrix_from_json(const json& j) {
  try {
    const Index rows = j.at("rows").get<Index>();
    const Index cols = j.at("cols").get<Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || static_cast<Index>(data.size()) != rows * cols) {
      throw FormatError("matrix payload size does not match its shape");
    }
    return Eigen::Map<const Matrix>(data.data(), rows, cols);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed matrix: ") + e.what());
  }
}

json default_generator(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kCpesph:
      return {{"kind", "cpesph"}, {"d", 25},          {"S", 10},
              {"N", 80},        {"eigengap", 1e-3}, {"sqrt_n_rows", false}, {"seed", 1}};
    case ProblemKind::kCfmspd:
      return {{"kind", "cfmspd"}, {"n", 2}, {"S", 10}, {"N", 60}, {"diameter", 1.0}, {"seed", 1}};
    case ProblemKind::kMbcfsti:
      return {{"kind", "mbcfsti"}, {"d", 25}, {"p", 2}, {"S", 20}, {"N", 50}, {"seed", 1}};
    case ProblemKind::kMtfl:
      return {{"kind", "mtfl"}, {"m", 100}, {"r", 5},           {"S", 20},
              {"N", 50},        {"noise_std", 1e-6}, {"lambda", 0.0}, {"seed", 1}};
    case ProblemKind::kCustom:
      break;
  }
  throw ParameterError("no generator for this problem kind");
}

Dataset synthesize(const json& request) {
  if (!request.contains("kind")) throw ParameterError("generator needs a 'kind'");
  const ProblemKind kind = problem_kind_from_string(request.at("kind").get<std::string>());
  json g = default_generator(kind);
  for (const auto& [key, value] : request.items()) g[key] = value;

  Dataset out;
  out.generator = g;
  try {
    const auto seed = g.at("seed").get<std::uint64_t>();
    switch (kind) {
      case ProblemKind::kCpesph:
        out.problem = std::make_shared<CpesphProblem>(
            make_cpesph(g.at("d").get<Index>(), g.at("S").get<Index>(), g.at("N").get<Index>(),
                        g.at("eigengap").get<double>(), seed, g.at("sqrt_n_rows").get<bool>()));
        break;
      case ProblemKind::kCfmspd:
        out.problem = std::make_shared<CfmspdProblem>(
            make_cfmspd(g.at("n").get<Index>(), g.at("S").get<Index>(), g.at("N").get<Index>(),
                        g.at("diameter").get<double>(), seed));
        break;
      case ProblemKind::kMbcfsti:
        out.problem = std::make_shared<MbcfstiProblem>(
            make_mbcfsti(g.at("d").get<Index>(), g.at("p").get<Index>(), g.at("S").get<Index>(),
                         g.at("N").get<Index>(), seed));
        break;
      case ProblemKind::kMtfl:
        out.problem = std::make_shared<MtflProblem>(
            make_mtfl(g.at("m").get<Index>(), g.at("r").get<Index>(), g.at("S").get<Index>(),
                      g.at("N").get<Index>(), g.at("noise_std").get<double>(),
                      g.at("lambda").get<double>(), seed));
        break;
      case ProblemKind::kCustom:
        throw ParameterError("custom problems cannot be synthesized");
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("bad generator parameters: ") + e.what());
  }
  return out;
}

json dataset_to_json(const Dataset& dataset) {
  const FederatedProblem& p = *dataset.problem;
  json j = {{"format", kFormatName},
            {"version", kFormatVersion},
            {"kind", to_string(p.kind())},
            {"generator", dataset.generator},
            {"S", p.num_agents()},
            {"N", p.samples_per_agent()}};
  switch (p.kind()) {
    case ProblemKind::kCpesph: {
      json agents = json::array();
      for (const Matrix& z : static_cast<const CpesphProblem&>(p).agent_rows()) {
        agents.push_back(matrix_to_json(z));
      }
      j["agents"] = std::move(agents);
      break;
    }
    case ProblemKind::kCfmspd:
      j["agents"] = matrix_lists_to_json(static_cast<const CfmspdProblem&>(p).agent_samples());
      break;
    case ProblemKind::kMbcfsti: {
      const auto& b = static_cast<const MbcfstiProblem&>(p);
      j["agents"] = matrix_lists_to_json(b.agent_samples());
      j["H"] = matrix_to_json(b.h_diagonal());
      break;
    }
    case ProblemKind::kMtfl: {
      const auto& t = static_cast<const MtflProblem&>(p);
      j["r"] = t.r();
      j["lambda"] = t.lambda();
      j["agents"] = tasks_to_json(t.agent_tasks());
      if (t.ground_truth()) j["ground_truth"] = matrix_to_json(*t.ground_truth());
      if (t.test_tasks()) j["test"] = tasks_to_json(*t.test_tasks());
      break;
    }
    case ProblemKind::kCustom:
      throw UnsupportedOperation("custom problems cannot be serialized");
  }
  if (dataset.reference) {
    j["reference"] = {{"point", matrix_to_json(dataset.reference->point.value)},
                      {"cost", dataset.reference->cost},
                      {"grad_norm", dataset.reference->grad_norm},
                      {"method", dataset.reference->method}};
  }
  return j;
}

Dataset dataset_from_json(const json& j) {
  Dataset out;
  try {
    if (j.value("format", std::string{}) != kFormatName) {
      throw FormatError("not an rfed dataset container");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw FormatError("unsupported dataset version");
    }
    out.generator = j.value("generator", json::object());
    const ProblemKind kind = problem_kind_from_string(j.at("kind").get<std::string>());
    switch (kind) {
      case ProblemKind::kCpesph: {
        std::vector<Matrix> rows;
        for (const json& z : j.at("agents")) rows.push_back(matrix_from_json(z));
        out.problem = std::make_shared<CpesphProblem>(std::move(rows));
        break;
      }
      case ProblemKind::kCfmspd:
        out.problem = std::make_shared<CfmspdProblem>(matrix_lists_from_json(j.at("agents")));
        break;
      case ProblemKind::kMbcfsti:
        out.problem = std::make_shared<MbcfstiProblem>(matrix_lists_from_json(j.at("agents")),
                                                       matrix_from_json(j.at("H")).reshaped());
        break;
      case ProblemKind::kMtfl: {
        auto problem = std::make_shared<MtflProblem>(
            tasks_from_json(j.at("agents")), j.at("r").get<Index>(), j.at("lambda").get<double>());
        if (j.contains("ground_truth")) {
          problem->set_ground_truth(matrix_from_json(j.at("ground_truth")));
        }
        if (j.contains("test")) problem->set_test_tasks(tasks_from_json(j.at("test")));
        out.problem = std::move(problem);
        break;
      }
      case ProblemKind::kCustom:
        throw FormatError("custom problems cannot be loaded");
    }
    if (j.contains("reference")) {
      const json& r = j.at("reference");
      out.reference = ReferenceSolution{Point{matrix_from_json(r.at("point"))},
                                        r.at("cost").get<double>(),
                                        r.value("grad_norm", 0.0),
                                        r.value("method", std::string{})};
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed dataset: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid dataset contents: ") + e.what());
  }
  return out;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  const json j = dataset_to_json(dataset);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (path.extension() == ".json") {
    out << j.dump() << '\n';
  } else {
    const std::vector<std::uint8_t> bytes = json::to_cbor(j);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  json j;
  try {
    if (!bytes.empty() && bytes.front() == '{') {
      j = json::parse(bytes.begin(), bytes.end());
    } else {
      j = json::from_cbor(bytes);
    }
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return dataset_from_json(j);
}

}  // namespace rfed
