#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rlpw/analytic_ip.hpp"
#include "rlpw/kernels.hpp"

namespace rlpw {
namespace detail {

// 5-point Gauss-Legendre on [lo, hi]. Nodes are strictly interior, so an
// integrand with jumps exactly at panel edges is still sampled where smooth.
template <class F>
std::complex<double> gauss5(const F& f, double lo, double hi) {
  static constexpr double kNode[] = {0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr double kWeight[] = {0.5688888888888889, 0.4786286704993665,
                                       0.2369268850561891};
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::complex<double> acc = kWeight[0] * f(mid);
  for (int i = 1; i < 3; ++i)
    acc += kWeight[i] * (f(mid - half * kNode[i]) + f(mid + half * kNode[i]));
  return half * acc;
}

template <class F>
std::complex<double> adaptive_panel(const F& f, double lo, double hi, double tol,
                                    int depth, double& err_est) {
  if (depth > 28)
    throw ConvergenceError("quadrature did not converge on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  const double mid = 0.5 * (lo + hi);
  const std::complex<double> whole = gauss5(f, lo, hi);
  const std::complex<double> split = gauss5(f, lo, mid) + gauss5(f, mid, hi);
  const double diff = std::abs(split - whole);
  if (diff <= tol) {
    err_est += diff;
    return split;
  }
  return adaptive_panel(f, lo, mid, tol / 2, depth + 1, err_est) +
         adaptive_panel(f, mid, hi, tol / 2, depth + 1, err_est);
}

// Panel edges (units of pi) from a set of band pairs: every support endpoint,
// so each panel lies inside one constant region of every mask involved.
inline std::vector<Rational> panel_edges(std::initializer_list<SupportPair> supports) {
  std::vector<Rational> edges;
  for (const SupportPair& s : supports)
    for (const Rational& e : {s.neg.lo, s.neg.hi, s.pos.lo, s.pos.hi}) edges.push_back(e);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

template <class F>
std::complex<double> integrate_panels(const F& f, const std::vector<Rational>& edges,
                                      std::function<bool(const Rational&)> live, double tol,
                                      double& err_est) {
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (live((edges[i] + edges[i + 1]) / 2)) total += edges[i + 1] - edges[i];
  std::complex<double> acc = 0.0;
  err_est = 0.0;
  if (total == 0) return acc;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Rational mid = (edges[i] + edges[i + 1]) / 2;
    if (!live(mid)) continue;
    const double share = to_double((edges[i + 1] - edges[i]) / total);
    acc += adaptive_panel(f, to_double(edges[i]) * std::numbers::pi,
                          to_double(edges[i + 1]) * std::numbers::pi, tol * share, 0, err_est);
  }
  return acc;
}

}  // namespace detail

struct QuadResult {
  std::complex<double> value;
  double err_est = 0.0;
};

// Brute-force frequency-domain inner product: adaptive quadrature of
// (1/2pi) f_a(w) conj(f_b(w)) over the union of the two supports, split at every
// band edge. Independent of the closed forms; used to cross-check them.
inline QuadResult quad_ip_freq_full(const Atom& a, const Atom& b, double rel_tol) {
  if (a.dilation != b.dilation) throw DomainError("quad_ip_freq: dilation mismatch");
  if (a.flavor != b.flavor) throw DomainError("quad_ip_freq: flavor mismatch");
  if (rel_tol <= 0) throw DomainError("quad_ip_freq: rel_tol must be positive");
  const SupportPair sa = support_of(a.dilation, a.index.j, a.index.m);
  const SupportPair sb = support_of(b.dilation, b.index.j, b.index.m);
  const auto edges = detail::panel_edges({sa, sb});
  const auto integrand = [&](double w) {
    return atom_freq(a, w) * std::conj(atom_freq(b, w)) / (2.0 * std::numbers::pi);
  };
  QuadResult r;
  r.value = detail::integrate_panels(
      integrand, edges, [&](const Rational& m) { return sa.contains(m) || sb.contains(m); },
      rel_tol, r.err_est);
  return r;
}

inline std::complex<double> quad_ip_freq(const Atom& a, const Atom& b, double rel_tol) {
  return quad_ip_freq_full(a, b, rel_tol).value;
}

// Deliberately loose time-domain oracle: trapezoid over [-window, window].
// The kernels decay like 1/t, so the truncation error is O(1/window); this
// catches convention blunders, it does not certify precision.
inline std::complex<double> quad_ip_time(const Atom& a, const Atom& b, double window,
                                         double step) {
  if (window <= 0) throw DomainError("quad_ip_time: window must be positive");
  if (step <= 0) throw DomainError("quad_ip_time: step must be positive");
  const long half = std::lround(window / step);
  double acc = 0.5 * (atom_time(a, -half * step) * atom_time(b, -half * step) +
                      atom_time(a, half * step) * atom_time(b, half * step));
  for (long k = -half + 1; k < half; ++k) {
    const double x = k * step;
    acc += atom_time(a, x) * atom_time(b, x);
  }
  return acc * step;
}

// Inverse transform of the frequency mask by quadrature, for comparison against
// the closed-form time kernel.
inline double ift_mask(const Dilation& d, long m, Flavor flavor, double t, double rel_tol) {
  if (!std::isfinite(t)) throw DomainError("ift_mask: non-finite t");
  if (rel_tol <= 0) throw DomainError("ift_mask: rel_tol must be positive");
  const SupportPair s = support_of(d, 0, m);
  const auto edges = detail::panel_edges({s});
  const auto integrand = [&](double w) {
    return mask_value(d, m, flavor, w) * std::exp(std::complex<double>(0.0, w * t)) /
           (2.0 * std::numbers::pi);
  };
  double err = 0.0;
  return detail::integrate_panels(
             integrand, edges, [&](const Rational& mid) { return s.contains(mid); }, rel_tol,
             err)
      .real();
}

struct OracleComparison {
  std::string op;
  std::complex<double> closed_form;
  std::complex<double> oracle;
  double oracle_err = 0.0;
  bool pass = false;

  nlohmann::ordered_json to_json() const {
    return {{"op", op},
            {"closed_form", {closed_form.real(), closed_form.imag()}},
            {"oracle", {oracle.real(), oracle.imag()}},
            {"oracle_err", oracle_err},
            {"pass", pass}};
  }
};

inline OracleComparison compare_ip(const Atom& a, const Atom& b, double tol) {
  OracleComparison c;
  c.op = "inner_product";
  c.closed_form = inner_product(a, b);
  const QuadResult q = quad_ip_freq_full(a, b, tol / 4);
  c.oracle = q.value;
  c.oracle_err = q.err_est;
  c.pass = std::abs(c.closed_form - c.oracle) <= tol;
  return c;
}

}  // namespace rlpw
