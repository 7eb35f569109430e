#pragma once

#include "rfed/core/manifold.hpp"

namespace rfed {

// Symmetric positive definite n x n matrices with the affine-invariant metric
// <U, V>_X = trace(U X^-1 V X^-1).
//
// The exponential map is X^{1/2} expm(X^{-1/2} V X^{-1/2}) X^{1/2}; it is also
// used as the retraction. Transport is the parallel transport
// (Y X^-1)^{1/2} U (X^-1 Y)^{1/2}.
class SpdManifold final : public Manifold {
 public:
  explicit SpdManifold(Index n);

  // Points must be symmetric with every eigenvalue above this.
  static constexpr double kMinEigenvalue = 1e-12;

  ManifoldKind kind() const override { return ManifoldKind::kSpd; }
  std::string name() const override;
  Index rows() const override { return n_; }
  Index cols() const override { return n_; }
  Index dimension() const override { return n_ * (n_ + 1) / 2; }

  double feasibility_error(const Matrix& x) const override;
  double tangent_error(const Point& x, const Matrix& v) const override;
  Matrix reproject(const Matrix& x) const override;

  double inner(const Point& x, const Tangent& u, const Tangent& v) const override;
  Tangent project(const Point& x, const Matrix& ambient) const override;
  Tangent euclidean_to_riemannian_gradient(const Point& x, const Matrix& egrad) const override;
  Point retract(const Point& x, const Tangent& v) const override { return exp(x, v); }

  bool has_exp() const override { return true; }
  Point exp(const Point& x, const Tangent& v) const override;
  bool has_log() const override { return true; }
  Tangent log(const Point& x, const Point& y) const override;

  Tangent transport(const Point& from, const Point& to, const Tangent& u) const override;

  bool has_distance() const override { return true; }
  // ||logm(X^{-1/2} Y X^{-1/2})||_F
  double distance(const Point& x, const Point& y) const override;

  Point random_point(Rng& rng) const override;

  // Throws DomainError unless x is symmetric with eigenvalues > kMinEigenvalue.
  void require_spd(const Matrix& x, const char* what) const;

 private:
  Index n_;
};

}  // namespace rfed
