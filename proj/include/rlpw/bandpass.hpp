#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "rlpw/spectra.hpp"

namespace rlpw {

// True iff every piece of f lies inside the (j, m) band pair.
inline bool membership(const PiecewiseConstSpectrum& f, const Dilation& d, long j, long m) {
  d.require_index({j, 0, m});
  const SupportPair band = support_of(d, j, m);
  return std::all_of(f.pieces().begin(), f.pieces().end(), [&](const SpectrumPiece& p) {
    return band.pos.covers(p.interval) || band.neg.covers(p.interval);
  });
}

namespace detail {

inline void require_band_member(const PiecewiseConstSpectrum& f, const Dilation& d, long j) {
  for (long m = 1; m <= d.subbands(); ++m)
    if (membership(f, d, j, m)) return;
  for (const auto& p : f.pieces()) {
    bool inside_some = false;
    for (long m = 1; m <= d.subbands(); ++m) {
      const SupportPair band = support_of(d, j, m);
      inside_some = band.pos.covers(p.interval) || band.neg.covers(p.interval);
      if (inside_some) break;
    }
    if (!inside_some)
      throw DomainError("spectrum is not bandlimited to one subband at this scale: piece [" +
                        to_fraction(p.interval.lo) + ", " + to_fraction(p.interval.hi) +
                        ") leaks outside every band");
  }
  throw DomainError("spectrum pieces span multiple subbands at this scale");
}

}  // namespace detail

// Signal samples f(nT) at the critical period T = q M^j. The sample points are
// exact rationals, converted to floating point only for evaluation.
inline std::vector<std::pair<long, std::complex<double>>> sample(const PiecewiseConstSpectrum& f,
                                                                 const Dilation& d, long j,
                                                                 IndexRange n_range) {
  detail::require_band_member(f, d, j);
  const Rational period = d.q() * d.pow(j);
  std::vector<std::pair<long, std::complex<double>>> out;
  out.reserve(n_range.size());
  for (long n = n_range.lo; n <= n_range.hi; ++n)
    out.emplace_back(n, eval_time(f, to_double(n * period)));
  return out;
}

// Bandpass reconstruction sum: f(nT) (T / sqrt(q)) M^{-j} psi(M^{-j}(x - nT)).
inline std::complex<double> reconstruct(
    std::span<const std::pair<long, std::complex<double>>> samples, const Dilation& d, long j,
    long m, double x) {
  d.require_index({j, 0, m});
  const double period = to_double(d.q() * d.pow(j));
  const double mj_inv = d.pow_d(-j);
  const double gain = period / std::sqrt(static_cast<double>(d.q())) * mj_inv;
  std::complex<double> acc = 0.0;
  for (const auto& [n, value] : samples)
    acc += value * gain * psi_time(d, m, mj_inv * (x - n * period));
  return acc;
}

// Same sum written as coefficients against unit-norm atoms: the per-term weight
// is f(nT) M^{j/2} sqrt(q). Agrees with reconstruct term by term.
inline std::complex<double> reconstruct_atoms(
    std::span<const std::pair<long, std::complex<double>>> samples, const Dilation& d, long j,
    long m, double x) {
  const double weight = d.half_pow_d(j) * std::sqrt(static_cast<double>(d.q()));
  std::complex<double> acc = 0.0;
  for (const auto& [n, value] : samples)
    acc += value * weight * atom_time(Atom(d, {j, n, m}, Flavor::New), x);
  return acc;
}

// The reconstruction coefficients of an atom sampled on its own grid collapse to
// a Kronecker delta: sqrt(q) psi(k q) = delta(k) within 1e-12.
inline bool atom_sample_identity(const Dilation& d, long j, long m, long n_max) {
  d.require_index({j, 0, m});
  if (n_max < 0) throw DomainError("atom_sample_identity: n_max must be >= 0");
  const double root_q = std::sqrt(static_cast<double>(d.q()));
  for (long k = -n_max; k <= n_max; ++k) {
    const double got = root_q * psi_time(d, m, static_cast<double>(k * d.q()));
    if (std::fabs(got - (k == 0 ? 1.0 : 0.0)) > 1e-12) return false;
  }
  return true;
}

// Relative L2 error of truncated reconstruction against the closed-form signal,
// per n_max (ascending). The partial sums extend incrementally as n_max grows.
inline std::vector<std::pair<long, double>> convergence_study(const PiecewiseConstSpectrum& f,
                                                              const Dilation& d, long j, long m,
                                                              std::vector<long> n_max_list,
                                                              std::span<const double> grid) {
  d.require_index({j, 0, m});
  if (!membership(f, d, j, m)) detail::require_band_member(f, d, j);
  std::vector<std::pair<long, double>> out;
  if (grid.empty() || n_max_list.empty()) return out;
  std::sort(n_max_list.begin(), n_max_list.end());
  if (n_max_list.front() < 0) throw DomainError("convergence_study: n_max must be >= 0");

  const long top = n_max_list.back();
  const auto samples = sample(f, d, j, IndexRange(-top, top));
  const auto value_at = [&](long n) { return samples[static_cast<std::size_t>(n + top)].second; };

  const double period = to_double(d.q() * d.pow(j));
  const double mj_inv = d.pow_d(-j);
  const double gain = period / std::sqrt(static_cast<double>(d.q())) * mj_inv;
  const auto term = [&](long n, double x) {
    return value_at(n) * gain * psi_time(d, m, mj_inv * (x - n * period));
  };

  std::vector<std::complex<double>> ref(grid.size()), acc(grid.size(), 0.0);
  double ref_energy = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    ref[g] = eval_time(f, grid[g]);
    ref_energy += std::norm(ref[g]);
  }
  long n = 0;
  for (const long n_max : n_max_list) {
    for (; n <= n_max; ++n) {
      for (std::size_t g = 0; g < grid.size(); ++g) {
        acc[g] += term(n, grid[g]);
        if (n > 0) acc[g] += term(-n, grid[g]);
      }
    }
    double err_energy = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) err_energy += std::norm(acc[g] - ref[g]);
    const double rel = ref_energy > 0 ? std::sqrt(err_energy / ref_energy)
                                      : std::sqrt(err_energy);
    out.emplace_back(n_max, rel);
  }
  return out;
}

}  // namespace rlpw
