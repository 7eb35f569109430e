#pragma once

#include <functional>

#include "rfed/core/types.hpp"

namespace rfed {

// Matrix functions of symmetric matrices through one symmetric
// eigendecomposition: f(A) = V f(diag) V^T.
Matrix symmetric_function(const Matrix& a, const std::function<double(double)>& f);

Matrix symmetrize(const Matrix& a);

// Eigenvalues are clamped at kLogFloor before taking logarithms.
inline constexpr double kLogFloor = 1e-14;

Matrix expm_symmetric(const Matrix& a);
Matrix logm_spd(const Matrix& a);
Matrix sqrtm_spd(const Matrix& a);

// Square root and inverse square root of an SPD matrix from one decomposition.
struct SpdRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};
SpdRoots spd_roots(const Matrix& a);

// Orthogonal polar factor U V^T of the thin SVD of a (tall or square).
Matrix polar_factor(const Matrix& a);

// Orthonormal basis of the column space of a tall full-rank matrix (thin
// Householder Q).
Matrix orthonormal_columns(const Matrix& a);

}  // namespace rfed
