#pragma once

#include "rfed/core/manifold.hpp"

namespace rfed {

// Gr(r, m) as the quotient St(r, m) / O(r). Points are orthonormal m x r
// representatives; tangent vectors are horizontal lifts (U^T xi = 0).
class GrassmannManifold final : public Manifold {
 public:
  GrassmannManifold(Index m, Index r);

  // Log refuses U^T V with a condition number above this.
  static constexpr double kMaxLogCondition = 1e12;

  ManifoldKind kind() const override { return ManifoldKind::kGrassmann; }
  std::string name() const override;
  Index rows() const override { return m_; }
  Index cols() const override { return r_; }
  Index dimension() const override { return r_ * (m_ - r_); }

  double feasibility_error(const Matrix& x) const override;
  double tangent_error(const Point& x, const Matrix& v) const override;
  Matrix reproject(const Matrix& x) const override;

  double inner(const Point& x, const Tangent& u, const Tangent& v) const override;
  Tangent project(const Point& x, const Matrix& ambient) const override;
  // P Q^T from the SVD P S Q^T of U + xi.
  Point retract(const Point& x, const Tangent& v) const override;

  bool has_exp() const override { return true; }
  // U Q cos(S) Q^T + P sin(S) Q^T with xi = P S Q^T.
  Point exp(const Point& x, const Tangent& v) const override;
  bool has_log() const override { return true; }
  // P atan(S) Q^T with (V - U U^T V)(U^T V)^-1 = P S Q^T.
  Tangent log(const Point& x, const Point& y) const override;

  // Horizontal-space parallelization: xi = U_perp K  ->  V_perp K.
  Tangent transport(const Point& from, const Point& to, const Tangent& v) const override;

  bool has_distance() const override { return true; }
  // 2-norm of the principal angles.
  double distance(const Point& x, const Point& y) const override;

  Point random_point(Rng& rng) const override;

 private:
  Index m_;
  Index r_;
};

// Principal angles between span(u) and span(v), ascending. Computed as
// atan2(sin, cos) from both singular-value sets so small angles stay accurate.
Vector principal_angles(const Matrix& u, const Matrix& v);

}  // namespace rfed
