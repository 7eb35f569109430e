#include "rfed/manifolds/stiefel.hpp"

#include <sstream>

#include "orthogonal_complement.hpp"
#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"

namespace rfed {

StiefelManifold::StiefelManifold(Index d, Index p) : d_(d), p_(p) {
  if (p < 1 || p > d) throw ParameterError("stiefel: requires 1 <= p <= d");
}

std::string StiefelManifold::name() const {
  std::ostringstream os;
  os << "St(" << p_ << "," << d_ << ")";
  return os.str();
}

double StiefelManifold::feasibility_error(const Matrix& x) const {
  return (x.transpose() * x - Matrix::Identity(x.cols(), x.cols())).norm();
}

double StiefelManifold::tangent_error(const Point& x, const Matrix& v) const {
  const Matrix xv = x.value.transpose() * v;
  return (xv + xv.transpose()).norm();
}

Matrix StiefelManifold::reproject(const Matrix& x) const { return polar_factor(x); }

double StiefelManifold::inner(const Point&, const Tangent& u, const Tangent& v) const {
  return u.value.cwiseProduct(v.value).sum();
}

Tangent StiefelManifold::project(const Point& x, const Matrix& ambient) const {
  return Tangent{ambient - x.value * symmetrize(x.value.transpose() * ambient)};
}

Point StiefelManifold::retract(const Point& x, const Tangent& v) const {
  return Point{polar_factor(x.value + v.value)};
}

Tangent StiefelManifold::transport(const Point& from, const Point& to, const Tangent& v) const {
  const Matrix omega = 0.5 * (from.value.transpose() * v.value - v.value.transpose() * from.value);
  Matrix out = to.value * omega;
  if (d_ > p_) {
    const Matrix k = detail::OrthogonalComplement(from.value).coordinates(v.value);
    out += detail::OrthogonalComplement(to.value).embed(k);
  }
  return Tangent{std::move(out)};
}

Point StiefelManifold::random_point(Rng& rng) const {
  return Point{orthonormal_columns(rng.gaussian(d_, p_))};
}

}  // namespace rfed
