#pragma once
// Deterministic 64-bit random stream (SplitMix64, Steele/Lea/Flood 2014).
//
// The k-th output is a bijective bit mix of seed + k * golden_gamma, i.e. a
// counter-based generator: the stream is a pure function of (seed, k) and
// reproduces bit-for-bit on any platform and compiler.  std::mt19937 pins the
// engine but the standard distributions are implementation-defined, which is
// not good enough for frozen-value tests.

#include <cstdint>

namespace pcon {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound), bound > 0, via 128-bit multiply-shift.  The
  // residual bias (< 2^-64 per draw) is irrelevant; reproducibility is not.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace pcon
