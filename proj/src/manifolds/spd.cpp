#include "rfed/manifolds/spd.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"

namespace rfed {

SpdManifold::SpdManifold(Index n) : n_(n) {
  if (n < 1) throw ParameterError("spd: matrix size must be at least 1");
}

std::string SpdManifold::name() const {
  std::ostringstream os;
  os << "SPD(" << n_ << ")";
  return os.str();
}

double SpdManifold::feasibility_error(const Matrix& x) const {
  const double asym = (x - x.transpose()).norm();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(x), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= kMinEigenvalue) {
    return std::numeric_limits<double>::infinity();
  }
  return asym;
}

double SpdManifold::tangent_error(const Point&, const Matrix& v) const {
  return (v - v.transpose()).norm();
}

Matrix SpdManifold::reproject(const Matrix& x) const { return symmetrize(x); }

void SpdManifold::require_spd(const Matrix& x, const char* what) const {
  require_shape(x, what);
  if (feasibility_error(x) > kFeasibilityTol * std::max(1.0, x.norm())) {
    throw DomainError(std::string("spd: ") + what + " is not symmetric positive definite");
  }
}

double SpdManifold::inner(const Point& x, const Tangent& u, const Tangent& v) const {
  Eigen::LLT<Matrix> llt(x.value);
  const Matrix a = llt.solve(u.value);
  const Matrix b = llt.solve(v.value);
  return (a.cwiseProduct(b.transpose())).sum();
}

Tangent SpdManifold::project(const Point&, const Matrix& ambient) const {
  return Tangent{symmetrize(ambient)};
}

Tangent SpdManifold::euclidean_to_riemannian_gradient(const Point& x, const Matrix& egrad) const {
  return Tangent{symmetrize(x.value * symmetrize(egrad) * x.value)};
}

Point SpdManifold::exp(const Point& x, const Tangent& v) const {
  const SpdRoots roots = spd_roots(x.value);
  const Matrix inner_exp = expm_symmetric(roots.inv_sqrt * v.value * roots.inv_sqrt);
  return Point{symmetrize(roots.sqrt * inner_exp * roots.sqrt)};
}

Tangent SpdManifold::log(const Point& x, const Point& y) const {
  require_spd(y.value, "log target");
  const SpdRoots roots = spd_roots(x.value);
  const Matrix inner_log = logm_spd(roots.inv_sqrt * y.value * roots.inv_sqrt);
  return Tangent{symmetrize(roots.sqrt * inner_log * roots.sqrt)};
}

Tangent SpdManifold::transport(const Point& from, const Point& to, const Tangent& u) const {
  // E = X^{1/2} (X^{-1/2} Y X^{-1/2})^{1/2} X^{-1/2} satisfies E^2 = Y X^-1,
  // and E^T = (X^-1 Y)^{1/2}.
  const SpdRoots roots = spd_roots(from.value);
  const Matrix e =
      roots.sqrt * sqrtm_spd(roots.inv_sqrt * to.value * roots.inv_sqrt) * roots.inv_sqrt;
  return Tangent{symmetrize(e * u.value * e.transpose())};
}

double SpdManifold::distance(const Point& x, const Point& y) const {
  require_spd(y.value, "distance argument");
  const SpdRoots roots = spd_roots(x.value);
  return logm_spd(roots.inv_sqrt * y.value * roots.inv_sqrt).norm();
}

Point SpdManifold::random_point(Rng& rng) const {
  const Matrix g = rng.gaussian(n_, n_);
  return Point{expm_symmetric(0.5 * symmetrize(g))};
}

}  // namespace rfed
