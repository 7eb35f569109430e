#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

#include "rfed/core/types.hpp"

namespace rfed {

// Keyed splitmix64 stream. Two generators built from the same key words
// produce the same sequence, independent of construction order, which is what
// lets every (seed, round, step, agent) cell own a private stream.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : Rng({seed}) {}
  Rng(std::initializer_list<std::uint64_t> key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform in [0, 1).
  double uniform();
  // Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);
  // Uniform integer in [lo, hi].
  long between(long lo, long hi);
  double normal();
  Matrix gaussian(Index rows, Index cols);

 private:
  std::uint64_t state_;
  std::normal_distribution<double> normal_;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace rfed
