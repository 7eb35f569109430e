#include "rfed/core/manifold.hpp"

#include <cmath>
#include <sstream>

#include "rfed/core/errors.hpp"

namespace rfed {

const char* to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::kEuclidean:
      return "euclidean";
    case ManifoldKind::kSphere:
      return "sphere";
    case ManifoldKind::kSpd:
      return "spd";
    case ManifoldKind::kStiefel:
      return "stiefel";
    case ManifoldKind::kGrassmann:
      return "grassmann";
  }
  return "unknown";
}

double Manifold::norm(const Point& x, const Tangent& v) const {
  return std::sqrt(std::max(inner(x, v, v), 0.0));
}

Tangent Manifold::euclidean_to_riemannian_gradient(const Point& x, const Matrix& egrad) const {
  return project(x, egrad);
}

Point Manifold::exp(const Point&, const Tangent&) const {
  throw UnsupportedOperation(name() + ": exponential map not available");
}

Tangent Manifold::log(const Point&, const Point&) const {
  throw UnsupportedOperation(name() + ": inverse exponential map not available");
}

double Manifold::distance(const Point&, const Point&) const {
  throw UnsupportedOperation(name() + ": distance not available");
}

Tangent Manifold::random_tangent(const Point& x, Rng& rng) const {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Tangent v = project(x, rng.gaussian(rows(), cols()));
    const double n = norm(x, v);
    if (n > 1e-12) return (1.0 / n) * std::move(v);
  }
  throw DomainError(name() + ": could not draw a non-zero tangent vector");
}

Tangent Manifold::zero_tangent(const Point& x) const {
  return Tangent{Matrix::Zero(x.value.rows(), x.value.cols())};
}

Point Manifold::move(const Point& x, const Tangent& v, RetractionMode mode) const {
  if (mode == RetractionMode::kExactExp) {
    if (!has_exp()) {
      throw UnsupportedOperation(name() + ": exact exponential mode requested but not available");
    }
    return exp(x, v);
  }
  return retract(x, v);
}

void Manifold::require_shape(const Matrix& a, const char* what) const {
  if (!has_shape(a)) {
    std::ostringstream os;
    os << name() << ": " << what << " has shape " << a.rows() << "x" << a.cols() << ", expected "
       << rows() << "x" << cols();
    throw ParameterError(os.str());
  }
}

bool Manifold::contains(const Matrix& x, double tol) const {
  return has_shape(x) && feasibility_error(x) <= tol;
}

}  // namespace rfed
