#include "rfed/manifolds/sphere.hpp"

#include <cmath>
#include <sstream>

#include "rfed/core/errors.hpp"

namespace rfed {

namespace {
constexpr double kAntipodalTol = 1e-10;
}

SphereManifold::SphereManifold(Index d) : d_(d) {
  if (d < 1) throw ParameterError("sphere: dimension must be at least 1");
}

std::string SphereManifold::name() const {
  std::ostringstream os;
  os << "S^" << d_;
  return os.str();
}

double SphereManifold::feasibility_error(const Matrix& x) const {
  return std::abs(x.norm() - 1.0);
}

double SphereManifold::tangent_error(const Point& x, const Matrix& v) const {
  return std::abs(x.value.col(0).dot(v.col(0)));
}

Matrix SphereManifold::reproject(const Matrix& x) const {
  const double n = x.norm();
  if (!(n > 0.0)) throw DomainError("sphere: cannot normalize a zero vector");
  return x / n;
}

double SphereManifold::inner(const Point&, const Tangent& u, const Tangent& v) const {
  return u.value.col(0).dot(v.value.col(0));
}

Tangent SphereManifold::project(const Point& x, const Matrix& ambient) const {
  const auto& p = x.value;
  return Tangent{ambient - p * p.col(0).dot(ambient.col(0))};
}

Point SphereManifold::retract(const Point& x, const Tangent& v) const {
  return Point{reproject(x.value + v.value)};
}

Point SphereManifold::exp(const Point& x, const Tangent& v) const {
  const double n = v.value.norm();
  if (n == 0.0) return x;
  return Point{reproject(std::cos(n) * x.value + (std::sin(n) / n) * v.value)};
}

Tangent SphereManifold::log(const Point& x, const Point& y) const {
  const double c = x.value.col(0).dot(y.value.col(0));
  if (c <= -1.0 + kAntipodalTol) throw DomainError("sphere: log of an antipodal point");
  const Matrix u = y.value - c * x.value;
  const double s = u.norm();
  if (s == 0.0) return zero_tangent(x);
  return Tangent{(std::atan2(s, c) / s) * u};
}

Tangent SphereManifold::transport(const Point& from, const Point& to, const Tangent& u) const {
  const Matrix v = log(from, to).value;
  const double n = v.norm();
  if (n == 0.0) return u;
  const double vu = v.col(0).dot(u.value.col(0));
  return Tangent{u.value + ((std::cos(n) - 1.0) * vu / (n * n)) * v -
                 (std::sin(n) * vu / n) * from.value};
}

double SphereManifold::distance(const Point& x, const Point& y) const {
  const double c = x.value.col(0).dot(y.value.col(0));
  return std::atan2((y.value - c * x.value).norm(), c);
}

Point SphereManifold::random_point(Rng& rng) const {
  return Point{reproject(rng.gaussian(d_ + 1, 1))};
}

}  // namespace rfed
