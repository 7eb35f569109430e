#pragma once

#include <memory>
#include <string>

#include "rfed/core/rng.hpp"
#include "rfed/core/types.hpp"

namespace rfed {

enum class ManifoldKind { kEuclidean, kSphere, kSpd, kStiefel, kGrassmann };

const char* to_string(ManifoldKind kind);

// Feasibility / tangency tolerance shared by all kernels.
inline constexpr double kFeasibilityTol = 1e-10;

// Geometric operations of one manifold family. Points and tangent vectors are
// held in ambient coordinates; all operations are pure and thread-safe.
class Manifold {
 public:
  virtual ~Manifold() = default;

  virtual ManifoldKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  // Intrinsic dimension.
  virtual Index dimension() const = 0;

  // Distance of an ambient matrix from the manifold's defining equations;
  // +inf when a definiteness condition fails.
  virtual double feasibility_error(const Matrix& x) const = 0;
  // Distance of v from the tangent (horizontal, for Grassmann) space at x.
  virtual double tangent_error(const Point& x, const Matrix& v) const = 0;
  // Pull a slightly drifted point back onto the manifold.
  virtual Matrix reproject(const Matrix& x) const = 0;

  virtual double inner(const Point& x, const Tangent& u, const Tangent& v) const = 0;
  double norm(const Point& x, const Tangent& v) const;

  virtual Tangent project(const Point& x, const Matrix& ambient) const = 0;
  // Riemannian gradient from the Euclidean gradient of a smooth extension.
  virtual Tangent euclidean_to_riemannian_gradient(const Point& x, const Matrix& egrad) const;

  virtual Point retract(const Point& x, const Tangent& v) const = 0;

  virtual bool has_exp() const { return false; }
  virtual Point exp(const Point& x, const Tangent& v) const;
  // Inverse of exp (the inverse retraction used by tangent-mean aggregation).
  virtual bool has_log() const { return false; }
  virtual Tangent log(const Point& x, const Point& y) const;

  // Isometric vector transport of v in T_from to T_to.
  virtual Tangent transport(const Point& from, const Point& to, const Tangent& v) const = 0;

  virtual bool has_distance() const { return false; }
  virtual double distance(const Point& x, const Point& y) const;

  virtual Point random_point(Rng& rng) const = 0;
  // Unit-norm tangent vector at x.
  Tangent random_tangent(const Point& x, Rng& rng) const;
  Tangent zero_tangent(const Point& x) const;

  // retract or exp depending on mode; exact mode needs has_exp().
  Point move(const Point& x, const Tangent& v, RetractionMode mode) const;

  bool has_shape(const Matrix& a) const { return a.rows() == rows() && a.cols() == cols(); }
  void require_shape(const Matrix& a, const char* what) const;
  bool contains(const Matrix& x, double tol = kFeasibilityTol) const;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

}  // namespace rfed
