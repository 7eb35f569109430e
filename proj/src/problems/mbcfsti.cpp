#include "rfed/problems/mbcfsti.hpp"

#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"
#include "rfed/manifolds/stiefel.hpp"

namespace rfed {

namespace {

Index checked_d(const std::vector<std::vector<Matrix>>& samples, const Vector& h) {
  if (samples.empty() || samples.front().empty()) throw ParameterError("mbcfsti: no samples");
  const Index d = samples.front().front().rows();
  for (const auto& agent : samples) {
    if (agent.size() != samples.front().size()) {
      throw ParameterError("mbcfsti: every agent must hold the same number of samples");
    }
    for (const Matrix& a : agent) {
      if (a.rows() != d || a.cols() != d) throw ParameterError("mbcfsti: sample shape mismatch");
      if ((a - a.transpose()).norm() > 1e-12 * std::max(1.0, a.norm())) {
        throw ParameterError("mbcfsti: samples must be symmetric");
      }
    }
  }
  if (h.size() < 1 || h.size() > d) throw ParameterError("mbcfsti: requires 1 <= p <= d");
  return d;
}

}  // namespace

MbcfstiProblem::MbcfstiProblem(std::vector<std::vector<Matrix>> agent_samples, Vector h_diagonal)
    : FederatedProblem(
          std::make_shared<StiefelManifold>(checked_d(agent_samples, h_diagonal), h_diagonal.size()),
          static_cast<Index>(agent_samples.size()), static_cast<Index>(agent_samples.front().size())),
      samples_(std::move(agent_samples)),
      h_(std::move(h_diagonal)) {}

double MbcfstiProblem::batch_cost(const Point& x, Index agent, std::span<const Index> samples) const {
  require_agent(agent);
  const auto& data = samples_[static_cast<std::size_t>(agent)];
  const Index d = x.value.rows();
  Matrix a_sum = Matrix::Zero(d, d);
  for (Index s : samples) a_sum += data[static_cast<std::size_t>(s)];
  const Matrix ax = a_sum * x.value;
  const double total = (x.value.cwiseProduct(ax) * h_).sum();
  return total / static_cast<double>(samples.size());
}

Tangent MbcfstiProblem::batch_gradient(const Point& x, Index agent,
                                       std::span<const Index> samples) const {
  require_agent(agent);
  const auto& data = samples_[static_cast<std::size_t>(agent)];
  const Index d = x.value.rows();
  Matrix a_sum = Matrix::Zero(d, d);
  for (Index s : samples) a_sum += data[static_cast<std::size_t>(s)];
  const Matrix egrad =
      (2.0 / static_cast<double>(samples.size())) * (a_sum * x.value) * h_.asDiagonal();
  return manifold().project(x, egrad);
}

Matrix MbcfstiProblem::mean_matrix() const {
  const Index d = manifold().rows();
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& agent : samples_) {
    for (const Matrix& a : agent) acc += a;
  }
  return symmetrize(acc / static_cast<double>(num_agents() * samples_per_agent()));
}

std::optional<Point> MbcfstiProblem::reference_optimum() const {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(mean_matrix());
  return Point{eig.eigenvectors().leftCols(h_.size())};
}

double MbcfstiProblem::optimal_cost() const {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(mean_matrix(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().head(h_.size()).dot(h_);
}

MbcfstiProblem make_mbcfsti(Index d, Index p, Index num_agents, Index samples_per_agent,
                            std::uint64_t seed) {
  if (p < 1 || p > d) throw ParameterError("mbcfsti: requires 1 <= p <= d");
  if (num_agents < 1 || samples_per_agent < 1) {
    throw ParameterError("mbcfsti: agent and sample counts must be positive");
  }
  std::vector<std::vector<Matrix>> samples(static_cast<std::size_t>(num_agents));
  for (Index i = 0; i < num_agents; ++i) {
    Rng rng({seed, 0x62726f63ULL, static_cast<std::uint64_t>(i)});
    auto& agent = samples[static_cast<std::size_t>(i)];
    agent.reserve(static_cast<std::size_t>(samples_per_agent));
    for (Index j = 0; j < samples_per_agent; ++j) {
      const Matrix b = rng.gaussian(d, d);
      agent.push_back(b + b.transpose());
    }
  }
  Vector h(p);
  for (Index k = 0; k < p; ++k) h(k) = static_cast<double>(p - k);
  return MbcfstiProblem(std::move(samples), std::move(h));
}

}  // namespace rfed
