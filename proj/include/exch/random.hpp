// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace exch {

// xoshiro256** seeded through splitmix64. The generator family is fixed so a
// seed reproduces the same stream on every platform; callers always own and
// pass the source explicitly.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1); never returns 0.
  double uniform_open();
  // Standard normal via the Marsaglia polar method.
  double normal();

  friend bool operator==(const RandomSource&, const RandomSource&) = default;

 private:
  std::array<std::uint64_t, 4> s_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Independent stream seed for the index-th child of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace exch
