// Reproducible sampling of coefficients, tensor elements and Maurer–Cartan
// elements.  Coefficients are integers in [-3, 3] drawn from a 64-bit
// linear congruential generator:
//
//   state <- 6364136223846793005 * state + 1442695040888963407  (mod 2^64)
//   coefficient = ((state >> 33) mod 7) - 3
//
// so that sampled cases can be reproduced by any implementation.
#pragma once

#include "dgla/maurer_cartan.hpp"

#include <cstdint>

namespace dgla {

class Lcg {
public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  int coeff() { return static_cast<int>((next() >> 33) % 7) - 3; }
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>((next() >> 33) % n); }

  Vec vec(std::size_t n);
  /// Random combination of the basis of s.
  Vec in(const Subspace &s);

private:
  std::uint64_t state_;
};

TensorElement sample_tensor(const DglaPtr &l, const ArtinPtr &a, int degree, Lcg &rng);

/// An MC element over a, built by walking the small-extension tower from 𝕂
/// upwards: a random first-order cocycle, then at each step the particular
/// lift plus a random combination of lift directions.  When a random start
/// is obstructed somewhere up the tower it is retried; after `attempts`
/// failures the walk restarts from zero, which always lifts.
TensorElement sample_mc(const DglaPtr &l, const ArtinPtr &a, Lcg &rng, int attempts = 4);

} // namespace dgla
