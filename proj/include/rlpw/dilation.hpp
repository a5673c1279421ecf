#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <numeric>

#include "rlpw/errors.hpp"
#include "rlpw/rational.hpp"

namespace rlpw {

// Largest |j| for which exact powers of M are formed.
inline constexpr long kScaleGuard = 64;

// Index (j, n, m) of one wavelet atom: scale, translation, subband.
struct AtomIndex {
  long j = 0;
  long n = 0;
  long m = 1;

  friend auto operator<=>(const AtomIndex&, const AtomIndex&) = default;
};

// Inclusive integer range; hi < lo means empty.
struct IndexRange {
  long lo = 0;
  long hi = 0;

  IndexRange() = default;
  IndexRange(long l, long h) : lo(l), hi(h) {}
  long size() const { return hi < lo ? 0 : hi - lo + 1; }
};

// Dilation factor M = p/q with p, q coprime and p > q >= 1.
class Dilation {
 public:
  Dilation(long p, long q) : p_(p), q_(q) {
    if (q < 1 || p <= q) throw DomainError("dilation requires p > q >= 1");
    if (std::gcd(p, q) != 1) throw DomainError("dilation requires coprime p and q");
  }

  long p() const { return p_; }
  long q() const { return q_; }
  long subbands() const { return p_ - q_; }
  Rational ratio() const { return Rational(p_) / Rational(q_); }

  // Exact M^j; |j| is bounded by kScaleGuard.
  Rational pow(long j) const {
    require_scale(j);
    return rational_pow(ratio(), j);
  }
  double pow_d(long j) const { return to_double(pow(j)); }
  double half_pow_d(long j) const { return std::sqrt(pow_d(j)); }  // M^{j/2}

  bool valid_index(const AtomIndex& idx) const {
    return idx.m >= 1 && idx.m <= subbands() && std::labs(idx.j) <= kScaleGuard;
  }
  void require_index(const AtomIndex& idx) const {
    if (idx.m < 1 || idx.m > subbands())
      throw DomainError("subband index m out of range");
    require_scale(idx.j);
  }
  static void require_scale(long j) {
    if (j > kScaleGuard || j < -kScaleGuard)
      throw OverflowGuardError("scale exponent exceeds guard bound");
  }

  friend bool operator==(const Dilation&, const Dilation&) = default;

 private:
  long p_;
  long q_;
};

}  // namespace rlpw
