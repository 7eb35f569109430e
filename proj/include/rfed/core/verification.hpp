#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rfed/core/manifold.hpp"

namespace rfed {

// e(h) = ||(R_x(h v) - x)/h - v|| for each h. v must be tangent at x.
std::vector<double> check_retraction_first_order(const Manifold& manifold, const Point& x,
                                                 const Tangent& v, std::span<const double> steps,
                                                 RetractionMode mode = RetractionMode::kCheap);

// | ||T_x^y v|| - ||v|| | / ||v||, and 0 for v = 0.
double check_transport_isometry(const Manifold& manifold, const Point& x, const Point& y,
                                const Tangent& v);

// Orthonormal basis (in the manifold metric) of the tangent space at x, from
// the projected canonical ambient basis by modified Gram-Schmidt with norm
// pivoting. Each vector is signed so its first non-negligible coordinate is
// positive.
std::vector<Tangent> orthonormal_tangent_basis(const Manifold& manifold, const Point& x);

// Central differences along a tangent basis:
//   sum_i (F(R_x(h b_i)) - F(R_x(-h b_i))) / (2h) b_i.
Tangent finite_difference_gradient(const std::function<double(const Point&)>& objective,
                                   const Manifold& manifold, const Point& x, double h);

}  // namespace rfed
