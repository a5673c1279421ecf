#pragma once

#include <optional>
#include <utility>

#include "rlpw/errors.hpp"
#include "rlpw/rational.hpp"

namespace rlpw {

// Frequency interval; endpoints are exact rational multiples of pi.
struct PiInterval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = false;

  static PiInterval closed_open(Rational lo, Rational hi) {
    check_order(lo, hi);
    return {std::move(lo), std::move(hi), true, false};
  }
  static PiInterval open_closed(Rational lo, Rational hi) {
    check_order(lo, hi);
    return {std::move(lo), std::move(hi), false, true};
  }

  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }

  bool contains(const Rational& w) const {
    if (w < lo || w > hi) return false;
    if (w == lo) return lo_closed;
    if (w == hi) return hi_closed;
    return true;
  }

  // Subset test, closure-aware.
  bool covers(const PiInterval& other) const {
    const bool left = other.lo > lo || (other.lo == lo && (lo_closed || !other.lo_closed));
    const bool right = other.hi < hi || (other.hi == hi && (hi_closed || !other.hi_closed));
    return left && right;
  }

  // Closure-aware intersection; nullopt when empty or a single point.
  std::optional<PiInterval> intersect(const PiInterval& other) const {
    PiInterval r;
    if (lo > other.lo) {
      r.lo = lo;
      r.lo_closed = lo_closed;
    } else if (lo < other.lo) {
      r.lo = other.lo;
      r.lo_closed = other.lo_closed;
    } else {
      r.lo = lo;
      r.lo_closed = lo_closed && other.lo_closed;
    }
    if (hi < other.hi) {
      r.hi = hi;
      r.hi_closed = hi_closed;
    } else if (hi > other.hi) {
      r.hi = other.hi;
      r.hi_closed = other.hi_closed;
    } else {
      r.hi = hi;
      r.hi_closed = hi_closed && other.hi_closed;
    }
    if (r.lo >= r.hi) return std::nullopt;
    return r;
  }

  PiInterval mirrored() const { return {-hi, -lo, hi_closed, lo_closed}; }

  friend bool operator==(const PiInterval&, const PiInterval&) = default;

 private:
  static void check_order(const Rational& lo, const Rational& hi) {
    if (lo >= hi) throw DomainError("interval requires lo < hi");
  }
};

// Symmetric support: positive band [lo, hi) with lo > 0, negative mirror (-hi, -lo].
struct SupportPair {
  PiInterval pos;
  PiInterval neg;

  static SupportPair mirror_of(PiInterval positive) {
    if (positive.lo <= 0) throw DomainError("support pair requires a strictly positive band");
    SupportPair s;
    s.neg = positive.mirrored();
    s.pos = std::move(positive);
    return s;
  }

  bool contains(const Rational& w) const { return pos.contains(w) || neg.contains(w); }

  friend bool operator==(const SupportPair&, const SupportPair&) = default;
};

}  // namespace rlpw
