#include "support.hpp"

#include <vector>

#include "rfed/core/rng.hpp"
#include "rfed/manifolds/euclidean.hpp"

namespace rfed::testing {

std::shared_ptr<LambdaProblem> make_euclidean_quadratic(Index dim, Index agents, Index samples,
                                                        std::uint64_t seed) {
  Rng rng(seed);
  auto targets = std::make_shared<std::vector<Matrix>>();
  for (Index i = 0; i < agents * samples; ++i) targets->push_back(rng.gaussian(dim, 1));
  auto at = [targets, samples](Index agent, Index s) -> const Matrix& {
    return (*targets)[static_cast<std::size_t>(agent * samples + s)];
  };
  return std::make_shared<LambdaProblem>(
      std::make_shared<EuclideanManifold>(dim, 1), agents, samples,
      [at](const Matrix& x, Index a, Index s) { return 0.5 * (x - at(a, s)).squaredNorm(); },
      [at](const Matrix& x, Index a, Index s) -> Matrix { return x - at(a, s); });
}

std::shared_ptr<LambdaProblem> make_constant(ManifoldPtr manifold, Index agents, Index samples) {
  return std::make_shared<LambdaProblem>(
      std::move(manifold), agents, samples, [](const Matrix&, Index, Index) { return 3.5; },
      [](const Matrix& x, Index, Index) -> Matrix { return Matrix::Zero(x.rows(), x.cols()); });
}

}  // namespace rfed::testing
