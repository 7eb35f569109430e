#include "rfed/manifolds/grassmann.hpp"

#include <cmath>
#include <sstream>

#include "orthogonal_complement.hpp"
#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"

namespace rfed {

Vector principal_angles(const Matrix& u, const Matrix& v) {
  const Matrix utv = u.transpose() * v;
  Eigen::JacobiSVD<Matrix> cos_svd(utv);
  Eigen::JacobiSVD<Matrix> sin_svd(v - u * utv);
  const Vector& cosines = cos_svd.singularValues();  // descending
  const Vector& sines = sin_svd.singularValues();    // descending
  const Index r = cosines.size();
  Vector angles(r);
  for (Index i = 0; i < r; ++i) {
    angles(i) = std::atan2(sines(r - 1 - i), cosines(i));
  }
  return angles;
}

GrassmannManifold::GrassmannManifold(Index m, Index r) : m_(m), r_(r) {
  if (r < 1 || r >= m) throw ParameterError("grassmann: requires 1 <= r < m");
}

std::string GrassmannManifold::name() const {
  std::ostringstream os;
  os << "Gr(" << r_ << "," << m_ << ")";
  return os.str();
}

double GrassmannManifold::feasibility_error(const Matrix& x) const {
  return (x.transpose() * x - Matrix::Identity(x.cols(), x.cols())).norm();
}

double GrassmannManifold::tangent_error(const Point& x, const Matrix& v) const {
  return (x.value.transpose() * v).norm();
}

Matrix GrassmannManifold::reproject(const Matrix& x) const { return polar_factor(x); }

double GrassmannManifold::inner(const Point&, const Tangent& u, const Tangent& v) const {
  return u.value.cwiseProduct(v.value).sum();
}

Tangent GrassmannManifold::project(const Point& x, const Matrix& ambient) const {
  return Tangent{ambient - x.value * (x.value.transpose() * ambient)};
}

Point GrassmannManifold::retract(const Point& x, const Tangent& v) const {
  return Point{polar_factor(x.value + v.value)};
}

Point GrassmannManifold::exp(const Point& x, const Tangent& v) const {
  Eigen::JacobiSVD<Matrix> svd(v.value, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const Matrix& q = svd.matrixV();
  const Matrix moved = x.value * q * s.array().cos().matrix().asDiagonal() * q.transpose() +
                       svd.matrixU() * s.array().sin().matrix().asDiagonal() * q.transpose();
  return Point{reproject(moved)};
}

Tangent GrassmannManifold::log(const Point& x, const Point& y) const {
  const Matrix utv = x.value.transpose() * y.value;
  Eigen::JacobiSVD<Matrix> check(utv);
  const Vector& sv = check.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0) || sv(0) / smallest > kMaxLogCondition) {
    throw DomainError("grassmann: log undefined, subspaces have a right principal angle");
  }
  const Matrix a = (y.value - x.value * utv) * utv.inverse();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector angles = svd.singularValues().array().atan().matrix();
  return Tangent{svd.matrixU() * angles.asDiagonal() * svd.matrixV().transpose()};
}

Tangent GrassmannManifold::transport(const Point& from, const Point& to, const Tangent& v) const {
  const Matrix k = detail::OrthogonalComplement(from.value).coordinates(v.value);
  return Tangent{detail::OrthogonalComplement(to.value).embed(k)};
}

double GrassmannManifold::distance(const Point& x, const Point& y) const {
  return principal_angles(x.value, y.value).norm();
}

Point GrassmannManifold::random_point(Rng& rng) const {
  return Point{orthonormal_columns(rng.gaussian(m_, r_))};
}

}  // namespace rfed
