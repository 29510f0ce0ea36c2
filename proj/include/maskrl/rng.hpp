#pragma once

#include <cstdint>
#include <random>

namespace maskrl {

// All stochastic components draw from an explicitly seeded mt19937_64 so a
// (seed, action sequence) pair replays bit-identically within one build.
using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t seed) { return Rng(seed); }

// Derives an independent stream from a base seed and a stream tag. Used to
// decouple e.g. environment resets from network initialization so adding a
// draw in one place does not shift the other.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  // splitmix64 round over the combined value
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double normal(Rng& rng, double mean, double stddev) {
  return std::normal_distribution<double>(mean, stddev)(rng);
}

}  // namespace maskrl
