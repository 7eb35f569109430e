#pragma once

#include "rfed/core/manifold.hpp"

namespace rfed {

// St(p, d) = {X in R^{d x p} : X^T X = I_p} as an embedded submanifold with
// the Euclidean metric. Polar retraction; isometric transport by
// parallelization. There is no closed-form inverse exponential, so exp/log
// are not offered.
class StiefelManifold final : public Manifold {
 public:
  StiefelManifold(Index d, Index p);

  ManifoldKind kind() const override { return ManifoldKind::kStiefel; }
  std::string name() const override;
  Index rows() const override { return d_; }
  Index cols() const override { return p_; }
  Index dimension() const override { return d_ * p_ - p_ * (p_ + 1) / 2; }

  double feasibility_error(const Matrix& x) const override;
  double tangent_error(const Point& x, const Matrix& v) const override;
  Matrix reproject(const Matrix& x) const override;

  double inner(const Point& x, const Tangent& u, const Tangent& v) const override;
  Tangent project(const Point& x, const Matrix& ambient) const override;
  // (X + V)(I + V^T V)^{-1/2}, evaluated as the polar factor of X + V.
  Point retract(const Point& x, const Tangent& v) const override;

  // Writes V = X Omega + X_perp K, with Omega skew and X_perp from the
  // Householder QR of X, and returns Y Omega + Y_perp K.
  Tangent transport(const Point& from, const Point& to, const Tangent& v) const override;

  Point random_point(Rng& rng) const override;

 private:
  Index d_;
  Index p_;
};

}  // namespace rfed
