#pragma once

#include "rfed/core/manifold.hpp"

namespace rfed {

// Unit sphere S^d in R^{d+1} with the induced metric.
//   retract:   polar, (x + v) / ||x + v||
//   exp / log: great circles; log fails for (near-)antipodal pairs
//   transport: parallel transport along the geodesic from x to y
class SphereManifold final : public Manifold {
 public:
  explicit SphereManifold(Index d);

  ManifoldKind kind() const override { return ManifoldKind::kSphere; }
  std::string name() const override;
  Index rows() const override { return d_ + 1; }
  Index cols() const override { return 1; }
  Index dimension() const override { return d_; }

  double feasibility_error(const Matrix& x) const override;
  double tangent_error(const Point& x, const Matrix& v) const override;
  Matrix reproject(const Matrix& x) const override;

  double inner(const Point& x, const Tangent& u, const Tangent& v) const override;
  Tangent project(const Point& x, const Matrix& ambient) const override;
  Point retract(const Point& x, const Tangent& v) const override;

  bool has_exp() const override { return true; }
  Point exp(const Point& x, const Tangent& v) const override;
  bool has_log() const override { return true; }
  Tangent log(const Point& x, const Point& y) const override;

  // Re-derives v = log_x(y) and applies
  //   (I + (cos|v| - 1) v v^T / |v|^2 - sin|v| x v^T / |v|) u.
  Tangent transport(const Point& from, const Point& to, const Tangent& u) const override;

  bool has_distance() const override { return true; }
  double distance(const Point& x, const Point& y) const override;

  Point random_point(Rng& rng) const override;

 private:
  Index d_;
};

}  // namespace rfed
