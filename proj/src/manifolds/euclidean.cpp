#include "rfed/manifolds/euclidean.hpp"

#include <limits>
#include <sstream>

#include "rfed/core/errors.hpp"

namespace rfed {

EuclideanManifold::EuclideanManifold(Index rows, Index cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw ParameterError("euclidean: shape must be positive");
}

std::string EuclideanManifold::name() const {
  std::ostringstream os;
  os << "R^(" << rows_ << "x" << cols_ << ")";
  return os.str();
}

double EuclideanManifold::feasibility_error(const Matrix& x) const {
  return x.allFinite() ? 0.0 : std::numeric_limits<double>::infinity();
}

double EuclideanManifold::tangent_error(const Point&, const Matrix& v) const {
  return v.allFinite() ? 0.0 : std::numeric_limits<double>::infinity();
}

double EuclideanManifold::inner(const Point&, const Tangent& u, const Tangent& v) const {
  require_shape(u.value, "u");
  require_shape(v.value, "v");
  return u.value.cwiseProduct(v.value).sum();
}

Tangent EuclideanManifold::project(const Point&, const Matrix& ambient) const {
  require_shape(ambient, "ambient matrix");
  return Tangent{ambient};
}

Point EuclideanManifold::retract(const Point& x, const Tangent& v) const {
  require_shape(x.value, "x");
  require_shape(v.value, "v");
  return Point{x.value + v.value};
}

Tangent EuclideanManifold::log(const Point& x, const Point& y) const {
  require_shape(x.value, "x");
  require_shape(y.value, "y");
  return Tangent{y.value - x.value};
}

Tangent EuclideanManifold::transport(const Point& from, const Point& to, const Tangent& v) const {
  require_shape(from.value, "from");
  require_shape(to.value, "to");
  require_shape(v.value, "v");
  return v;
}

double EuclideanManifold::distance(const Point& x, const Point& y) const {
  require_shape(x.value, "x");
  require_shape(y.value, "y");
  return (y.value - x.value).norm();
}

Point EuclideanManifold::random_point(Rng& rng) const { return Point{rng.gaussian(rows_, cols_)}; }

}  // namespace rfed
