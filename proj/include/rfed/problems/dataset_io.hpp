#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "rfed/problems/problem.hpp"

namespace rfed {

// High-accuracy optimum stored next to a dataset for excess-risk reporting.
struct ReferenceSolution {
  Point point;
  double cost = 0.0;
  double grad_norm = 0.0;
  std::string method;  // "closed_form" or "rsd"
};

struct Dataset {
  std::shared_ptr<const FederatedProblem> problem;
  // Generator description: {"kind": ..., "seed": ..., <generator params>}.
  nlohmann::json generator;
  std::optional<ReferenceSolution> reference;
};

// Default generator parameters per problem kind (the published experiment sizes).
nlohmann::json default_generator(ProblemKind kind);

// Builds the synthetic problem described by `generator`; missing fields take
// the defaults of default_generator.
Dataset synthesize(const nlohmann::json& generator);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const nlohmann::json& j);

// Self-describing container: JSON text for a ".json" extension, CBOR otherwise.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace rfed
