#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "rlpw/exactfreq.hpp"

namespace rlpw {

// New flavor: mask amplitude sqrt(q). Auscher flavor: amplitude 1 on the same
// support; its atoms have norm^2 = 1/q, so the family fails normalization for q > 1.
enum class Flavor { New, Auscher };

inline const char* flavor_name(Flavor f) { return f == Flavor::New ? "new" : "auscher"; }

inline Flavor flavor_from_name(const std::string& s) {
  if (s == "new") return Flavor::New;
  if (s == "auscher") return Flavor::Auscher;
  throw DomainError("unknown flavor: " + s);
}

inline double mask_amplitude(const Dilation& d, Flavor f) {
  return f == Flavor::New ? std::sqrt(static_cast<double>(d.q())) : 1.0;
}

// Exact amplitude^2 (q for New, 1 for Auscher).
inline Rational mask_amplitude_sq(const Dilation& d, Flavor f) {
  return f == Flavor::New ? Rational(d.q()) : Rational(1);
}

struct Atom {
  Dilation dilation;
  AtomIndex index;
  Flavor flavor = Flavor::New;

  Atom(Dilation d, AtomIndex idx, Flavor fl) : dilation(std::move(d)), index(idx), flavor(fl) {
    dilation.require_index(index);
  }
};

namespace detail {

// Band-pair test for a floating-point frequency; the lo <= |w| < hi form gives
// the lo-closed positive side and the hi-closed negative side in one comparison.
inline bool in_band_pair(double omega, const PiInterval& pos) {
  const double a = to_double(pos.lo) * std::numbers::pi;
  const double b = to_double(pos.hi) * std::numbers::pi;
  const double w = std::fabs(omega);
  return w >= a && w < b;
}

}  // namespace detail

// \hat\psi^m at angular frequency omega (rad/s).
inline double mask_value(const Dilation& d, long m, Flavor f, double omega) {
  if (!std::isfinite(omega)) throw DomainError("mask_value: non-finite omega");
  d.require_index({0, 0, m});
  return detail::in_band_pair(omega, support_of(d, 0, m).pos) ? mask_amplitude(d, f) : 0.0;
}

// Exact variant: omega given as a rational multiple of pi.
inline double mask_value(const Dilation& d, long m, Flavor f, const Rational& omega_over_pi) {
  d.require_index({0, 0, m});
  return support_of(d, 0, m).contains(omega_over_pi) ? mask_amplitude(d, f) : 0.0;
}

// \hat\psi^m(M^j omega), i.e. the mask on the scale-j band pair.
inline double scaled_mask_value(const Dilation& d, long j, long m, Flavor f, double omega) {
  if (!std::isfinite(omega)) throw DomainError("scaled_mask_value: non-finite omega");
  return detail::in_band_pair(omega, support_of(d, j, m).pos) ? mask_amplitude(d, f) : 0.0;
}

inline double scaled_mask_value(const Dilation& d, long j, long m, Flavor f,
                                const Rational& omega_over_pi) {
  return support_of(d, j, m).contains(omega_over_pi) ? mask_amplitude(d, f) : 0.0;
}

// Time-domain kernel: sqrt(q) [sin((q+m) pi t / q) - sin((q+m-1) pi t / q)] / (pi t),
// evaluated as 2 sqrt(q) cos(((2(q+m)-1) pi / 2q) t) sin((pi / 2q) t) / (pi t); the
// naive difference of sines cancels for small |t|. Value 1/sqrt(q) at t = 0.
inline double psi_time(const Dilation& d, long m, double t) {
  if (!std::isfinite(t)) throw DomainError("psi_time: non-finite t");
  d.require_index({0, 0, m});
  const double q = static_cast<double>(d.q());
  if (t == 0.0) return 1.0 / std::sqrt(q);
  const double carrier = (2.0 * (q + static_cast<double>(m)) - 1.0) * std::numbers::pi / (2.0 * q);
  const double half = std::numbers::pi / (2.0 * q);
  return 2.0 * std::sqrt(q) * std::cos(carrier * t) * std::sin(half * t) / (std::numbers::pi * t);
}

// psi^m_{j,n}(x) = M^{-j/2} psi^m(M^{-j} x - n q); Auscher flavor removes the sqrt(q).
inline double atom_time(const Atom& a, double x) {
  if (!std::isfinite(x)) throw DomainError("atom_time: non-finite x");
  const double arg = a.dilation.pow_d(-a.index.j) * x -
                     static_cast<double>(a.index.n) * static_cast<double>(a.dilation.q());
  double v = a.dilation.half_pow_d(-a.index.j) * psi_time(a.dilation, a.index.m, arg);
  if (a.flavor == Flavor::Auscher) v /= std::sqrt(static_cast<double>(a.dilation.q()));
  return v;
}

// Fourier transform of the atom: M^{j/2} \hat\psi^m(M^j omega) e^{-i n q M^j omega}.
inline std::complex<double> atom_freq(const Atom& a, double omega) {
  const double mag = a.dilation.half_pow_d(a.index.j) *
                     scaled_mask_value(a.dilation, a.index.j, a.index.m, a.flavor, omega);
  if (mag == 0.0) return {0.0, 0.0};
  const double phase = -static_cast<double>(a.index.n) * static_cast<double>(a.dilation.q()) *
                       a.dilation.pow_d(a.index.j) * omega;
  return std::polar(mag, phase);
}

}  // namespace rlpw
