#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "rlpw/errors.hpp"

namespace rlpw {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational; always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// r^e for any integer exponent; e < 0 inverts.
inline Rational rational_pow(const Rational& r, long e) {
  if (e == 0) return Rational(1);
  if (r == 0) {
    if (e < 0) throw DomainError("rational_pow: zero base with negative exponent");
    return Rational(0);
  }
  const auto k = static_cast<unsigned>(e < 0 ? -e : e);
  const BigInt n = boost::multiprecision::pow(numerator(r), k);
  const BigInt d = boost::multiprecision::pow(denominator(r), k);
  return e < 0 ? Rational(d) / Rational(n) : Rational(n) / Rational(d);
}

// Largest integer <= r.
inline BigInt floor_rational(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline BigInt ceil_rational(const Rational& r) { return -floor_rational(-r); }

// Canonical "num/den" rendering, denominator always written.
inline std::string to_fraction(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "num/den", plain integers, and plain decimals ("-0.25").
inline Rational parse_number(const std::string& s) {
  if (s.empty()) throw DomainError("parse_number: empty string");
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      if (slash == 0) throw DomainError("parse_number: missing numerator: " + s);
      const BigInt n(s.substr(0, slash));
      const BigInt d(s.substr(slash + 1));
      if (d <= 0) throw DomainError("parse_number: denominator must be positive");
      return Rational(n) / Rational(d);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("parse_number: bad fractional part: " + s);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool neg = !whole.empty() && whole[0] == '-';
    const BigInt head(whole.empty() || whole == "-" || whole == "+" ? std::string("0") : whole);
    BigInt total = boost::multiprecision::abs(head) * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
    if (neg) total = -total;
    return Rational(total) / Rational(scale);
  } catch (const std::exception& e) {
    throw DomainError(std::string("parse_number: cannot parse '") + s + "': " + e.what());
  }
}

}  // namespace rlpw
