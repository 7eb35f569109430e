#pragma once

#include <Eigen/Dense>

namespace rfed {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// A point on a manifold, stored in ambient coordinates (a vector is a d x 1 matrix).
struct Point {
  Matrix value;
};

// A tangent vector in ambient coordinates. The base point is passed alongside
// explicitly to every kernel operation.
struct Tangent {
  Matrix value;

  Tangent& operator+=(const Tangent& other) {
    value += other.value;
    return *this;
  }
  Tangent& operator*=(double s) {
    value *= s;
    return *this;
  }
};

inline Tangent operator+(Tangent a, const Tangent& b) { return a += b; }
inline Tangent operator-(const Tangent& a, const Tangent& b) { return Tangent{a.value - b.value}; }
inline Tangent operator*(double s, Tangent a) { return a *= s; }
inline Tangent operator-(const Tangent& a) { return Tangent{-a.value}; }

enum class RetractionMode {
  kCheap,     // polar / SVD retractions
  kExactExp,  // exponential map where the kernel offers one
};

}  // namespace rfed
