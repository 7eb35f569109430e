#include "rfed/core/matrix_functions.hpp"

#include <algorithm>
#include <cmath>

#include "rfed/core/errors.hpp"

namespace rfed {

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

Matrix symmetric_function(const Matrix& a, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(a));
  if (eig.info() != Eigen::Success) throw DomainError("symmetric eigendecomposition failed");
  const Vector values = eig.eigenvalues().unaryExpr(f);
  const Matrix& v = eig.eigenvectors();
  return v * values.asDiagonal() * v.transpose();
}

Matrix expm_symmetric(const Matrix& a) {
  return symmetric_function(a, [](double l) { return std::exp(l); });
}

Matrix logm_spd(const Matrix& a) {
  return symmetric_function(a, [](double l) { return std::log(std::max(l, kLogFloor)); });
}

Matrix sqrtm_spd(const Matrix& a) {
  return symmetric_function(a, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

SpdRoots spd_roots(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(a));
  if (eig.info() != Eigen::Success) throw DomainError("symmetric eigendecomposition failed");
  const Vector& l = eig.eigenvalues();
  if (l.minCoeff() <= 0.0) throw DomainError("matrix is not positive definite");
  const Matrix& v = eig.eigenvectors();
  const Vector s = l.cwiseSqrt();
  return {v * s.asDiagonal() * v.transpose(), v * s.cwiseInverse().asDiagonal() * v.transpose()};
}

Matrix polar_factor(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Matrix orthonormal_columns(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

}  // namespace rfed
