#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <span>
#include <vector>

#include "json.hpp"
#include "rlpw/analytic_ip.hpp"
#include "rlpw/spectra.hpp"

namespace rlpw {

struct CoefficientSet {
  Dilation dilation;
  Flavor flavor = Flavor::New;
  std::map<AtomIndex, std::complex<double>> entries;
};

namespace detail {

// Throws unless every piece of f lies in the union of the j_set annuli
// (containment up to the shared band endpoints, which carry no energy).
inline void require_support(const PiecewiseConstSpectrum& f, const Dilation& d,
                            std::span<const long> j_set) {
  std::vector<PiInterval> covers;
  for (const long j : j_set) {
    const SupportPair ann = annulus(d, j);
    covers.push_back(ann.neg);
    covers.push_back(ann.pos);
  }
  std::sort(covers.begin(), covers.end(),
            [](const PiInterval& a, const PiInterval& b) { return a.lo < b.lo; });
  std::string leaked;
  for (const auto& p : f.pieces()) {
    Rational cursor = p.interval.lo;
    for (const PiInterval& c : covers)
      if (c.lo <= cursor && cursor < c.hi) cursor = c.hi;
    if (cursor < p.interval.hi)
      leaked += " [" + to_fraction(p.interval.lo) + ", " + to_fraction(p.interval.hi) + ")";
  }
  if (!leaked.empty())
    throw DomainError("spectrum leaks outside the requested scales: pieces" + leaked);
}

// One band's share of f, reduced to phase-integral summands: the coefficient at
// translation n is sum over cuts of scale * phase_integral(len, mid, n q M^j).
struct BandCuts {
  long j = 0;
  long m = 1;
  double a_step = 0.0;  // q M^j
  std::vector<double> len, mid;            // rad/s
  std::vector<std::complex<double>> scale;  // value * M^{j/2} * amp / 2pi

  std::complex<double> coeff(long n) const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < len.size(); ++i)
      acc += scale[i] * phase_integral(len[i], mid[i], n * a_step);
    return acc;
  }
};

inline std::vector<BandCuts> band_cuts(const PiecewiseConstSpectrum& f, const Dilation& d,
                                       std::span<const long> j_set, Flavor flavor) {
  std::vector<BandCuts> out;
  for (const long j : j_set) {
    const double factor = d.half_pow_d(j) * mask_amplitude(d, flavor) / (2.0 * std::numbers::pi);
    for (long m = 1; m <= d.subbands(); ++m) {
      BandCuts bc;
      bc.j = j;
      bc.m = m;
      bc.a_step = d.q() * d.pow_d(j);
      const SupportPair band = support_of(d, j, m);
      for (const auto& p : f.pieces()) {
        for (const PiInterval* side : {&band.neg, &band.pos}) {
          const auto cut = p.interval.intersect(*side);
          if (!cut) continue;
          bc.len.push_back(to_double(cut->length()) * std::numbers::pi);
          bc.mid.push_back(to_double(cut->midpoint()) * std::numbers::pi);
          bc.scale.push_back(p.value * factor);
        }
      }
      if (!bc.len.empty()) out.push_back(std::move(bc));
    }
  }
  return out;
}

}  // namespace detail

// Closed-form analysis coefficients <f, atom> for every band intersecting f and
// every |n| <= n_max. Per cut the integrand is constant * exponential, so each
// coefficient is an exact antiderivative evaluation (a = 0 handled by the sinc
// limit inside phase_integral).
inline CoefficientSet analyze(const PiecewiseConstSpectrum& f, const Dilation& d,
                              std::span<const long> j_set, long n_max, Flavor flavor) {
  if (n_max < 0) throw DomainError("analyze: n_max must be >= 0");
  detail::require_support(f, d, j_set);
  CoefficientSet out{d, flavor, {}};
  for (const auto& bc : detail::band_cuts(f, d, j_set, flavor))
    for (long n = -n_max; n <= n_max; ++n)
      out.entries[{bc.j, n, bc.m}] = bc.coeff(n);
  return out;
}

inline BandTrigSpectrum synthesize(const CoefficientSet& c) {
  BandTrigSpectrum out{c.dilation, c.flavor, {}};
  for (const auto& [idx, coeff] : c.entries)
    out.bands[{idx.j, idx.m}].emplace_back(idx.n, coeff);
  return out;
}

// Coefficient recovery through the closed-form Gram identity: bands are mutually
// orthogonal, so only same-band inner products contribute.
inline CoefficientSet analyze_trig(const BandTrigSpectrum& f, long n_max) {
  if (n_max < 0) throw DomainError("analyze_trig: n_max must be >= 0");
  CoefficientSet out{f.dilation, f.flavor, {}};
  for (const auto& [band, terms] : f.bands) {
    const auto [j, m] = band;
    for (long n = -n_max; n <= n_max; ++n) {
      const Atom target(f.dilation, {j, n, m}, f.flavor);
      std::complex<double> acc = 0.0;
      for (const auto& [k, coeff] : terms)
        acc += coeff * inner_product(Atom(f.dilation, {j, k, m}, f.flavor), target);
      out.entries[{j, n, m}] = acc;
    }
  }
  return out;
}

struct ParsevalReport {
  double norm_sq_f = 0.0;
  std::vector<std::pair<long, double>> partial_sums;
  double deficit_at_max_N = 0.0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json partials = nlohmann::ordered_json::array();
    for (const auto& [n, s] : partial_sums) partials.push_back({n, s});
    return {{"norm_sq", norm_sq_f}, {"partials", std::move(partials)},
            {"deficit", deficit_at_max_N}};
  }
};

// Energy captured by coefficients with |n| <= N for each N in N_list (evaluated
// in ascending order, so the sums are nondecreasing).
inline ParsevalReport parseval_partial(const PiecewiseConstSpectrum& f, const Dilation& d,
                                       std::span<const long> j_set, std::vector<long> N_list,
                                       Flavor flavor) {
  detail::require_support(f, d, j_set);
  std::sort(N_list.begin(), N_list.end());
  ParsevalReport rep;
  rep.norm_sq_f = norm_sq(f);
  if (N_list.empty()) return rep;
  if (N_list.front() < 0) throw DomainError("parseval_partial: N must be >= 0");

  const long n_max = N_list.back();
  std::vector<double> by_abs_n(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (const auto& bc : detail::band_cuts(f, d, j_set, flavor)) {
    by_abs_n[0] += std::norm(bc.coeff(0));
    for (long n = 1; n <= n_max; ++n)
      by_abs_n[n] += std::norm(bc.coeff(n)) + std::norm(bc.coeff(-n));
  }
  double run = 0.0;
  long next = 0;
  for (const long N : N_list) {
    for (; next <= N; ++next) run += by_abs_n[next];
    rep.partial_sums.emplace_back(N, run);
  }
  rep.deficit_at_max_N = rep.norm_sq_f - rep.partial_sums.back().second;
  return rep;
}

}  // namespace rlpw
