#pragma once

#include "rfed/core/manifold.hpp"

namespace rfed {

// Flat space of rows x cols matrices with the Frobenius metric. Every map is
// the identity geometry, so RFedAGS on this kernel is plain FedAvg.
class EuclideanManifold final : public Manifold {
 public:
  EuclideanManifold(Index rows, Index cols);

  ManifoldKind kind() const override { return ManifoldKind::kEuclidean; }
  std::string name() const override;
  Index rows() const override { return rows_; }
  Index cols() const override { return cols_; }
  Index dimension() const override { return rows_ * cols_; }

  double feasibility_error(const Matrix& x) const override;
  double tangent_error(const Point& x, const Matrix& v) const override;
  Matrix reproject(const Matrix& x) const override { return x; }

  double inner(const Point& x, const Tangent& u, const Tangent& v) const override;
  Tangent project(const Point& x, const Matrix& ambient) const override;
  Point retract(const Point& x, const Tangent& v) const override;

  bool has_exp() const override { return true; }
  Point exp(const Point& x, const Tangent& v) const override { return retract(x, v); }
  bool has_log() const override { return true; }
  Tangent log(const Point& x, const Point& y) const override;

  Tangent transport(const Point& from, const Point& to, const Tangent& v) const override;

  bool has_distance() const override { return true; }
  double distance(const Point& x, const Point& y) const override;

  Point random_point(Rng& rng) const override;

 private:
  Index rows_;
  Index cols_;
};

}  // namespace rfed
