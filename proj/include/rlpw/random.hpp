#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "rlpw/rational.hpp"

namespace rlpw {

// splitmix64 stream; output sequence is identical on every platform, unlike
// the standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }  // [0, 1)

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(next_u64() %
                                  static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Uniform in [0, bound); bound may exceed 64 bits.
  BigInt below(const BigInt& bound) {
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    BigInt r = 0;
    for (std::size_t i = 0; i < bits; i += 64) {
      r <<= 64;
      r |= BigInt(next_u64());
    }
    return r % bound;
  }

  std::complex<double> unit_disk() {
    const double r = std::sqrt(uniform());
    const double th = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(th), r * std::sin(th)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace rlpw
