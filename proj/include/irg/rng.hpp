#pragma once

#include <cstdint>
#include <random>

namespace irg {

// splitmix64 step; used only to derive seeds, never as the working generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

// Seed for the (a, b) channel under a master seed; multiplying each channel
// by an odd constant before mixing keeps low-bit differences in master, a,
// and b from aliasing each other.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = master;
  splitmix64(s);
  s ^= 0x51'7c'c1'b7'27'22'0a'95ULL * (a + 1);
  splitmix64(s);
  s ^= 0x9e'37'79'b9'7f'4a'7c'15ULL * (b + 1);
  return splitmix64(s);
}

// Deterministic per-task stream: the same (master, a, b) always yields the
// same generator regardless of thread scheduling.
inline Rng make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return Rng(derive_seed(master, a, b));
}

}  // namespace irg
