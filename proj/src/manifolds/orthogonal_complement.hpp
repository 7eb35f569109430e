#pragma once

#include "rfed/core/types.hpp"

namespace rfed::detail {

// Implicit orthonormal complement X_perp of an orthonormal d x p matrix X,
// taken from the trailing d - p columns of the Householder Q of X. The
// construction is deterministic and smooth in X away from reflector sign
// switches, so nearby points get nearby complements.
class OrthogonalComplement {
 public:
  explicit OrthogonalComplement(const Matrix& x) : qr_(x), p_(x.cols()) {}

  // X_perp^T a, shape (d - p) x a.cols().
  Matrix coordinates(const Matrix& a) const {
    Matrix full = a;
    full.applyOnTheLeft(qr_.householderQ().transpose());
    return full.bottomRows(full.rows() - p_);
  }

  // X_perp k for k of shape (d - p) x c.
  Matrix embed(const Matrix& k) const {
    Matrix full = Matrix::Zero(k.rows() + p_, k.cols());
    full.bottomRows(k.rows()) = k;
    full.applyOnTheLeft(qr_.householderQ());
    return full;
  }

 private:
  Eigen::HouseholderQR<Matrix> qr_;
  Index p_;
};

}  // namespace rfed::detail
