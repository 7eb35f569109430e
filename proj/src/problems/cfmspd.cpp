#include "rfed/problems/cfmspd.hpp"

#include <cmath>

#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"
#include "rfed/manifolds/spd.hpp"

namespace rfed {

namespace {

struct Shape {
  Index agents;
  Index per_agent;
  Index n;
};

Shape checked_shape(const std::vector<std::vector<Matrix>>& samples) {
  if (samples.empty() || samples.front().empty()) throw ParameterError("cfmspd: no samples");
  const Index n = samples.front().front().rows();
  for (const auto& agent : samples) {
    if (agent.size() != samples.front().size()) {
      throw ParameterError("cfmspd: every agent must hold the same number of samples");
    }
    for (const Matrix& z : agent) {
      if (z.rows() != n || z.cols() != n) throw ParameterError("cfmspd: sample shape mismatch");
    }
  }
  return {static_cast<Index>(samples.size()), static_cast<Index>(samples.front().size()), n};
}

// Eigenvalues of X^{-1/2} Z X^{-1/2}.
Vector congruence_eigenvalues(const Matrix& inv_sqrt, const Matrix& z) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(inv_sqrt * z * inv_sqrt),
                                            Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

}  // namespace

CfmspdProblem::CfmspdProblem(std::vector<std::vector<Matrix>> agent_samples)
    : FederatedProblem(std::make_shared<SpdManifold>(checked_shape(agent_samples).n),
                       checked_shape(agent_samples).agents, checked_shape(agent_samples).per_agent),
      samples_(std::move(agent_samples)) {
  const auto& spd = static_cast<const SpdManifold&>(manifold());
  for (const auto& agent : samples_) {
    for (const Matrix& z : agent) spd.require_spd(z, "sample");
  }
}

double CfmspdProblem::batch_cost(const Point& x, Index agent, std::span<const Index> samples) const {
  require_agent(agent);
  const auto& data = samples_[static_cast<std::size_t>(agent)];
  const SpdRoots roots = spd_roots(x.value);
  double total = 0.0;
  for (Index s : samples) {
    const Vector l = congruence_eigenvalues(roots.inv_sqrt, data[static_cast<std::size_t>(s)]);
    total += l.array().max(kLogFloor).log().square().sum();
  }
  return total / static_cast<double>(samples.size());
}

Tangent CfmspdProblem::batch_gradient(const Point& x, Index agent,
                                      std::span<const Index> samples) const {
  require_agent(agent);
  const auto& data = samples_[static_cast<std::size_t>(agent)];
  const SpdRoots roots = spd_roots(x.value);
  Matrix log_sum = Matrix::Zero(x.value.rows(), x.value.cols());
  for (Index s : samples) {
    log_sum += logm_spd(roots.inv_sqrt * data[static_cast<std::size_t>(s)] * roots.inv_sqrt);
  }
  log_sum *= -2.0 / static_cast<double>(samples.size());
  return Tangent{symmetrize(roots.sqrt * log_sum * roots.sqrt)};
}

Point CfmspdProblem::initial_point(std::uint64_t) const {
  return Point{Matrix::Identity(manifold().rows(), manifold().cols())};
}

Point CfmspdProblem::log_euclidean_mean() const {
  Matrix acc = Matrix::Zero(manifold().rows(), manifold().cols());
  for (const auto& agent : samples_) {
    for (const Matrix& z : agent) acc += logm_spd(z);
  }
  return Point{expm_symmetric(acc / static_cast<double>(num_agents() * samples_per_agent()))};
}

CfmspdProblem make_cfmspd(Index n, Index num_agents, Index samples_per_agent, double diameter,
                          std::uint64_t seed) {
  if (n < 1) throw ParameterError("cfmspd: n must be at least 1");
  if (!(diameter > 0.0)) throw ParameterError("cfmspd: diameter must be positive");
  if (num_agents < 1 || samples_per_agent < 1) {
    throw ParameterError("cfmspd: agent and sample counts must be positive");
  }
  const SpdManifold spd(n);
  const Point identity{Matrix::Identity(n, n)};
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::vector<Matrix>> samples(static_cast<std::size_t>(num_agents));
  Index drawn = 0;
  for (auto& agent : samples) {
    agent.reserve(static_cast<std::size_t>(samples_per_agent));
    for (Index j = 0; j < samples_per_agent; ++j, ++drawn) {
      Rng rng({seed, 0x77697368ULL, static_cast<std::uint64_t>(drawn)});
      bool accepted = false;
      for (int attempt = 0; attempt <= kWishartMaxRejections; ++attempt) {
        // Wishart(I/n, n): G G^T with G having N(0, 1/n) entries.
        const Matrix g = scale * rng.gaussian(n, n);
        Matrix z = symmetrize(g * g.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> eig(z, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() <= SpdManifold::kMinEigenvalue) continue;
        if (spd.distance(identity, Point{z}) <= diameter) {
          agent.push_back(std::move(z));
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        throw DomainError("cfmspd: diameter bound rejected too many Wishart draws");
      }
    }
  }
  return CfmspdProblem(std::move(samples));
}

}  // namespace rfed
