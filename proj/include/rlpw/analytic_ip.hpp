#pragma once

#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include "json.hpp"
#include "rlpw/exactfreq.hpp"
#include "rlpw/kernels.hpp"

namespace rlpw {

// Squared L2 norm of any atom in the unit-amplitude flavor, independent of index.
inline Rational auscher_norm_sq(const Dilation& d, const AtomIndex& idx) {
  d.require_index(idx);
  return Rational(1, d.q());
}

// Closed-form <a, b>. Distinct (j, m) bands are disjoint, so the integral is 0.
// Same band, n = k: amplitude^2 / q, computed exactly. Same band, n != k: the
// sine difference is analytically zero (integer multiples of pi); by default the
// evaluated expression is returned so tests exercise it, assume_exact returns 0.
inline std::complex<double> inner_product(const Atom& a, const Atom& b,
                                          bool assume_exact = false) {
  if (a.dilation != b.dilation) throw DomainError("inner_product: dilation mismatch");
  if (a.flavor != b.flavor) throw DomainError("inner_product: flavor mismatch");
  const Dilation& d = a.dilation;
  if (a.index.j != b.index.j || a.index.m != b.index.m) return 0.0;

  const Rational amp_sq = mask_amplitude_sq(d, a.flavor);
  if (a.index.n == b.index.n) return to_double(amp_sq / d.q());
  if (assume_exact) return 0.0;

  const long j = a.index.j;
  const double mj = d.pow_d(j);
  const double delta = static_cast<double>(a.index.n - b.index.n) * d.q() * mj;
  const SupportPair s = support_of(d, j, a.index.m);
  const double lo = to_double(s.pos.lo) * std::numbers::pi;
  const double hi = to_double(s.pos.hi) * std::numbers::pi;
  return to_double(amp_sq) * (mj / std::numbers::pi) *
         (std::sin(delta * hi) - std::sin(delta * lo)) / delta;
}

// All (j, n, m) combinations over the given ranges and every subband, in
// lexicographic (j, n, m) order.
inline std::vector<AtomIndex> atom_grid(const Dilation& d, IndexRange j_range,
                                        IndexRange n_range) {
  std::vector<AtomIndex> out;
  out.reserve(static_cast<std::size_t>(j_range.size()) * n_range.size() * d.subbands());
  for (long j = j_range.lo; j <= j_range.hi; ++j)
    for (long n = n_range.lo; n <= n_range.hi; ++n)
      for (long m = 1; m <= d.subbands(); ++m) out.push_back({j, n, m});
  return out;
}

struct GramReport {
  std::vector<AtomIndex> indices;
  Flavor flavor = Flavor::New;
  double expected_diag = 1.0;
  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  nlohmann::ordered_json to_json() const {
    return {{"flavor", flavor_name(flavor)}, {"expected_diag", expected_diag},
            {"max_offdiag", max_offdiag},   {"max_diag_dev", max_diag_dev},
            {"pass", pass},                 {"tol", tolerance},
            {"size", indices.size()}};
  }
};

// Expected <a, a> for an orthonormality audit of the given flavor.
inline double natural_diag(const Dilation& d, Flavor flavor) {
  return to_double(mask_amplitude_sq(d, flavor) / d.q());
}

// Gram-matrix audit over the index grid. expected_diag defaults to the flavor's
// own diagonal; pass it explicitly (e.g. 1.0) to test a flavor against the
// orthonormal target instead. Entries are independent; jobs > 1 splits rows
// across threads, and the max-reductions make assembly order irrelevant.
inline GramReport gram(const Dilation& d, Flavor flavor, IndexRange j_range,
                       IndexRange n_range, double tol, double expected_diag,
                       unsigned jobs = 1) {
  if (tol <= 0) throw DomainError("gram: tol must be positive");
  if (j_range.size() == 0 || n_range.size() == 0)
    throw DomainError("gram: ranges must be nonempty");
  GramReport rep;
  rep.indices = atom_grid(d, j_range, n_range);
  rep.flavor = flavor;
  rep.expected_diag = expected_diag;
  rep.tolerance = tol;

  const std::size_t size = rep.indices.size();
  std::vector<Atom> atoms;
  atoms.reserve(size);
  for (const AtomIndex& idx : rep.indices) atoms.emplace_back(d, idx, flavor);

  const unsigned workers = std::max(1u, jobs);
  std::vector<double> offdiag(workers, 0.0), diagdev(workers, 0.0);
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < size; i += workers) {
      for (std::size_t k = i; k < size; ++k) {
        const double mag = std::abs(inner_product(atoms[i], atoms[k]));
        if (i == k)
          diagdev[w] = std::max(diagdev[w], std::fabs(mag - expected_diag));
        else
          offdiag[w] = std::max(offdiag[w], mag);
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (unsigned w = 0; w < workers; ++w) {
    rep.max_offdiag = std::max(rep.max_offdiag, offdiag[w]);
    rep.max_diag_dev = std::max(rep.max_diag_dev, diagdev[w]);
  }
  rep.pass = rep.max_offdiag <= tol && rep.max_diag_dev <= tol;
  return rep;
}

inline GramReport gram(const Dilation& d, Flavor flavor, IndexRange j_range,
                       IndexRange n_range, double tol, unsigned jobs = 1) {
  return gram(d, flavor, j_range, n_range, tol, natural_diag(d, flavor), jobs);
}

}  // namespace rlpw
