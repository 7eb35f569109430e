#include "rfed/problems/ridge.hpp"

#include "rfed/core/errors.hpp"

namespace rfed {

RidgeSolution ridge_solve(const Matrix& z, const Vector& y, double lambda) {
  if (z.rows() != y.size()) throw ParameterError("ridge_solve: Z and y disagree on row count");
  if (lambda < 0.0) throw ParameterError("ridge_solve: lambda must be non-negative");
  Matrix gram = z.transpose() * z;
  gram.diagonal().array() += 2.0 * lambda;
  const Vector rhs = z.transpose() * y;
  Eigen::LDLT<Matrix> ldlt(gram);
  // LDLT's rcond() misses exact singularity; judge by the pivot spread instead.
  const Vector pivots = ldlt.vectorD();
  const double top = pivots.size() ? pivots.cwiseAbs().maxCoeff() : 0.0;
  if (ldlt.info() == Eigen::Success && top > 0.0 && pivots.minCoeff() > 1e-13 * top) {
    return {ldlt.solve(rhs), false};
  }
  if (lambda > 0.0) throw DomainError("ridge_solve: regularized system is not positive definite");
  return {z.completeOrthogonalDecomposition().solve(y), true};
}

}  // namespace rfed
