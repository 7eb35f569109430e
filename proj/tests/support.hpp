#pragma once

#include <functional>
#include <memory>

#include "rfed/problems/problem.hpp"

namespace rfed::testing {

// Finite-sum problem from per-sample callbacks; the Riemannian gradient is the
// kernel's conversion of the averaged Euclidean gradient.
class LambdaProblem final : public FederatedProblem {
 public:
  using CostFn = std::function<double(const Matrix& x, Index agent, Index sample)>;
  using GradFn = std::function<Matrix(const Matrix& x, Index agent, Index sample)>;

  LambdaProblem(ManifoldPtr manifold, Index agents, Index samples, CostFn cost, GradFn egrad)
      : FederatedProblem(std::move(manifold), agents, samples),
        cost_(std::move(cost)),
        egrad_(std::move(egrad)) {}

  ProblemKind kind() const override { return ProblemKind::kCustom; }

  double batch_cost(const Point& x, Index agent, std::span<const Index> samples) const override {
    double total = 0.0;
    for (Index s : samples) total += cost_(x.value, agent, s);
    return total / static_cast<double>(samples.size());
  }

  Tangent batch_gradient(const Point& x, Index agent,
                         std::span<const Index> samples) const override {
    Matrix total = Matrix::Zero(x.value.rows(), x.value.cols());
    for (Index s : samples) total += egrad_(x.value, agent, s);
    total /= static_cast<double>(samples.size());
    return manifold().euclidean_to_riemannian_gradient(x, total);
  }

 private:
  CostFn cost_;
  GradFn egrad_;
};

// Least squares on R^{dim}: f(x; z_js) = 0.5 ||x - c_js||^2 with targets drawn from `seed`.
std::shared_ptr<LambdaProblem> make_euclidean_quadratic(Index dim, Index agents, Index samples,
                                                        std::uint64_t seed);

// Constant objective on `manifold`.
std::shared_ptr<LambdaProblem> make_constant(ManifoldPtr manifold, Index agents, Index samples);

}  // namespace rfed::testing
