#pragma once

// Portable pseudo-random numbers for gallery problems and test data.
//
// Generator: splitmix64. State s starts at the seed; each draw does
//   s += 0x9e3779b97f4a7c15
//   z  = s
//   z  = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z  = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
// uniform() = (draw >> 11) * 2^-53, in [0, 1).
// normal() is Box-Muller on two uniforms u1, u2 (u1 replaced by 1 - u1 so it
// is never zero): sqrt(-2 ln u1) * cos(2 pi u2); the sine branch is unused.
// Matrices are filled column by column.

#include <cstdint>

#include "nep/types.hpp"

namespace nep {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next();
  double uniform();
  double normal();
  Complex complex_normal();  // (normal() + i normal()) / sqrt(2)

 private:
  std::uint64_t state_;
};

/// Real standard normal entries, stored as complex.
Matrix random_normal_matrix(Index rows, Index cols, SplitMix64& rng);
/// Complex normal entries.
Matrix random_complex_matrix(Index rows, Index cols, SplitMix64& rng);
/// Each entry nonzero with probability `density`, value uniform in [0, 1).
Matrix random_sparse_uniform(Index rows, Index cols, double density, SplitMix64& rng);

}  // namespace nep
