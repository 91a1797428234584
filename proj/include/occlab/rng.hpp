#pragma once

#include <cstdint>

namespace occlab {

// Deterministic 64-bit generator (splitmix64 state update). All stochastic
// simulation in the project draws from this generator so that runs are
// reproducible bit-for-bit across platforms.
//
// Reference outputs for seed 42:
//   next():         13679457532755275413, 2949826092126892291,
//                   5139283748462763858,  6349198060258255764
//   next_uniform(): 0.7415648787718233,   0.1599103928769201,
//                   0.27860113025513866,  0.34419071652363753
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, 1) using the top 53 bits.
  double next_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace occlab
