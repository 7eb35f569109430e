#include "rfed/problems/cpesph.hpp"

#include <cmath>

#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"
#include "rfed/manifolds/sphere.hpp"

namespace rfed {

namespace {

Index checked_agents(const std::vector<Matrix>& rows) {
  if (rows.empty()) throw ParameterError("cpesph: no agents");
  for (const Matrix& z : rows) {
    if (z.rows() != rows.front().rows() || z.cols() != rows.front().cols()) {
      throw ParameterError("cpesph: agents must hold equally shaped sample matrices");
    }
  }
  if (rows.front().cols() < 2) throw ParameterError("cpesph: samples need at least 2 coordinates");
  return static_cast<Index>(rows.size());
}

}  // namespace

CpesphProblem::CpesphProblem(std::vector<Matrix> agent_rows)
    : FederatedProblem(std::make_shared<SphereManifold>(
                           agent_rows.empty() ? 1 : agent_rows.front().cols() - 1),
                       checked_agents(agent_rows), agent_rows.front().rows()),
      rows_(std::move(agent_rows)) {}

double CpesphProblem::batch_cost(const Point& x, Index agent, std::span<const Index> samples) const {
  require_agent(agent);
  const Matrix& z = rows_[static_cast<std::size_t>(agent)];
  const auto xv = x.value.col(0);
  double total = 0.0;
  for (Index s : samples) {
    const double p = z.row(s).dot(xv);
    total += p * p;
  }
  return -total / static_cast<double>(samples.size());
}

Tangent CpesphProblem::batch_gradient(const Point& x, Index agent,
                                      std::span<const Index> samples) const {
  require_agent(agent);
  const Matrix& z = rows_[static_cast<std::size_t>(agent)];
  const auto xv = x.value.col(0);
  Matrix egrad = Matrix::Zero(x.value.rows(), 1);
  for (Index s : samples) {
    egrad.col(0) += z.row(s).dot(xv) * z.row(s).transpose();
  }
  egrad *= -2.0 / static_cast<double>(samples.size());
  return manifold().project(x, egrad);
}

Matrix CpesphProblem::mean_covariance() const {
  const Index dim = rows_.front().cols();
  Matrix c = Matrix::Zero(dim, dim);
  for (const Matrix& z : rows_) c.noalias() += z.transpose() * z;
  return c / static_cast<double>(num_agents() * samples_per_agent());
}

std::optional<Point> CpesphProblem::reference_optimum() const {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(mean_covariance());
  Vector top = eig.eigenvectors().col(eig.eigenvectors().cols() - 1);
  Index arg = 0;
  top.cwiseAbs().maxCoeff(&arg);
  if (top(arg) < 0.0) top = -top;
  return Point{top.normalized()};
}

CpesphProblem make_cpesph(Index d, Index num_agents, Index samples_per_agent, double eigengap,
                          std::uint64_t seed, bool sqrt_n_rows) {
  if (d + 1 < 5) throw ParameterError("cpesph: d + 1 must be at least 5");
  if (!(eigengap > 0.0 && eigengap < 1.0 / 1.4)) {
    throw ParameterError("cpesph: eigengap must lie in (0, 1/1.4)");
  }
  if (num_agents < 1 || samples_per_agent < 1) {
    throw ParameterError("cpesph: agent and sample counts must be positive");
  }
  const Index dim = d + 1;
  const Index rank = std::min(samples_per_agent, dim);
  std::vector<Matrix> rows;
  rows.reserve(static_cast<std::size_t>(num_agents));
  for (Index i = 0; i < num_agents; ++i) {
    Rng rng({seed, 0x63706573ULL, static_cast<std::uint64_t>(i)});
    Vector sigma(dim);
    sigma(0) = 1.0;
    for (Index k = 1; k < 5; ++k) sigma(k) = 1.0 - (1.0 + 0.1 * static_cast<double>(k)) * eigengap;
    for (Index k = 5; k < dim; ++k) sigma(k) = std::abs(rng.normal()) / static_cast<double>(dim);
    const Matrix u = orthonormal_columns(rng.gaussian(samples_per_agent, rank));
    const Matrix v = orthonormal_columns(rng.gaussian(dim, dim));
    // Z_i = U_i Sigma_i V_i, keeping the leading `rank` singular triplets.
    rows.push_back(u * sigma.head(rank).asDiagonal() * v.leftCols(rank).transpose());
    if (sqrt_n_rows) rows.back() *= std::sqrt(static_cast<double>(samples_per_agent));
  }
  return CpesphProblem(std::move(rows));
}

}  // namespace rfed
