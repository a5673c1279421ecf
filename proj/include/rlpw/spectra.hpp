#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rlpw/exactfreq.hpp"
#include "rlpw/kernels.hpp"
#include "rlpw/random.hpp"

namespace rlpw {

struct SpectrumPiece {
  PiInterval interval;  // units of pi
  std::complex<double> value;
};

// Test signal defined by a compactly supported piecewise-constant spectrum.
// Pieces are kept disjoint and sorted; a hermitian spectrum is closed under
// omega -> -omega with conjugate values and so has a real-valued signal.
class PiecewiseConstSpectrum {
 public:
  PiecewiseConstSpectrum() = default;

  explicit PiecewiseConstSpectrum(std::vector<SpectrumPiece> pieces, bool hermitian = false)
      : pieces_(std::move(pieces)), hermitian_(hermitian) {
    std::sort(pieces_.begin(), pieces_.end(), [](const SpectrumPiece& a, const SpectrumPiece& b) {
      return a.interval.lo < b.interval.lo;
    });
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (pieces_[i].interval.lo >= pieces_[i].interval.hi)
        throw DomainError("spectrum piece requires lo < hi");
      if (i == 0) continue;
      const PiInterval& prev = pieces_[i - 1].interval;
      const PiInterval& cur = pieces_[i].interval;
      const bool point_overlap = prev.hi == cur.lo && prev.hi_closed && cur.lo_closed;
      if (prev.hi > cur.lo || point_overlap)
        throw DomainError("spectrum pieces must be pairwise disjoint");
    }
    if (hermitian_) check_hermitian();
  }

  std::span<const SpectrumPiece> pieces() const { return pieces_; }
  bool hermitian() const { return hermitian_; }
  bool empty() const { return pieces_.empty(); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : pieces_) {
      nlohmann::ordered_json jp;
      jp["lo"] = to_fraction(p.interval.lo);
      jp["hi"] = to_fraction(p.interval.hi);
      jp["re"] = p.value.real();
      jp["im"] = p.value.imag();
      arr.push_back(std::move(jp));
    }
    return nlohmann::ordered_json{{"pieces", std::move(arr)}, {"hermitian", hermitian_}};
  }

  static PiecewiseConstSpectrum from_json(const nlohmann::json& j) {
    std::vector<SpectrumPiece> pieces;
    for (const auto& jp : j.at("pieces")) {
      pieces.push_back({PiInterval::closed_open(parse_number(jp.at("lo").get<std::string>()),
                                                parse_number(jp.at("hi").get<std::string>())),
                        {jp.at("re").get<double>(), jp.at("im").get<double>()}});
    }
    return PiecewiseConstSpectrum(std::move(pieces), j.value("hermitian", false));
  }

 private:
  void check_hermitian() const {
    for (const auto& p : pieces_) {
      if (p.interval.lo == -p.interval.hi) {  // self-mirrored piece must be real
        if (p.value.imag() != 0.0)
          throw DomainError("hermitian spectrum: a symmetric piece must have a real value");
        continue;
      }
      const bool found = std::any_of(pieces_.begin(), pieces_.end(), [&](const SpectrumPiece& o) {
        return o.interval.lo == -p.interval.hi && o.interval.hi == -p.interval.lo &&
               o.value == std::conj(p.value);
      });
      if (!found) throw DomainError("hermitian spectrum: mirror piece missing");
    }
  }

  std::vector<SpectrumPiece> pieces_;
  bool hermitian_ = false;
};

namespace detail {

// sin(z)/z; short series below 1e-4 to avoid the 0/0 form.
inline double sinc(double z) {
  if (std::fabs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
  }
  return std::sin(z) / z;
}

// Integral of e^{i a w} dw over an interval of length len centred at mid
// (all in rad/s), written in the midpoint-modulated sinc form.
inline std::complex<double> phase_integral(double len, double mid, double a) {
  return len * sinc(a * len / 2.0) *
         std::exp(std::complex<double>(0.0, a * mid));
}

}  // namespace detail

// (1/2pi) integral |f|^2 = sum |v|^2 (hi - lo) / 2 with exact piece lengths.
inline double norm_sq(const PiecewiseConstSpectrum& s) {
  double acc = 0.0;
  for (const auto& p : s.pieces())
    acc += std::norm(p.value) * to_double(p.interval.length()) / 2.0;
  return acc;
}

// Inverse transform at time x: sum of value (e^{i hi x} - e^{i lo x}) / (2 pi i x)
// per piece, evaluated in the stable sinc form.
inline std::complex<double> eval_time(const PiecewiseConstSpectrum& s, double x) {
  if (!std::isfinite(x)) throw DomainError("eval_time: non-finite x");
  std::complex<double> acc = 0.0;
  for (const auto& p : s.pieces()) {
    const double len = to_double(p.interval.length()) * std::numbers::pi;
    const double mid = to_double(p.interval.midpoint()) * std::numbers::pi;
    acc += p.value * detail::phase_integral(len, mid, x);
  }
  return acc / (2.0 * std::numbers::pi);
}

// Exact band projection: pieces intersected with the band pair.
inline PiecewiseConstSpectrum restrict(const PiecewiseConstSpectrum& s, const SupportPair& band) {
  std::vector<SpectrumPiece> out;
  for (const auto& p : s.pieces())
    for (const PiInterval* side : {&band.neg, &band.pos})
      if (auto cut = p.interval.intersect(*side)) out.push_back({*cut, p.value});
  return PiecewiseConstSpectrum(std::move(out), s.hermitian());
}

// Mirror positive-axis pieces into a hermitian spectrum.
inline PiecewiseConstSpectrum hermitize(const PiecewiseConstSpectrum& s) {
  std::vector<SpectrumPiece> out;
  for (const auto& p : s.pieces()) {
    if (p.interval.lo <= 0) throw DomainError("hermitize expects strictly positive pieces");
    out.push_back(p);
    out.push_back({p.interval.mirrored(), std::conj(p.value)});
  }
  return PiecewiseConstSpectrum(std::move(out), true);
}

// Spectrum of the (j, m) atom with n = 0: constant M^{j/2} amplitude on its band pair.
inline PiecewiseConstSpectrum mask_spectrum(const Dilation& d, long j, long m, Flavor flavor) {
  const SupportPair s = support_of(d, j, m);
  const std::complex<double> v = d.half_pow_d(j) * mask_amplitude(d, flavor);
  return PiecewiseConstSpectrum({{s.pos, v}, {s.neg, v}}, true);
}

namespace detail {

// `count` disjoint pieces with endpoints on the k/grid lattice inside `inside`,
// values in the unit disk.
inline void random_pieces_in(Rng& rng, const PiInterval& inside, long grid, long count,
                             std::vector<SpectrumPiece>& out) {
  const BigInt k_lo = ceil_rational(inside.lo * grid);
  const BigInt k_hi = floor_rational(inside.hi * grid);  // may serve as a piece's open hi
  const BigInt avail = k_hi - k_lo + 1;
  const long want = 2L * count;
  if (avail < want)
    throw DomainError("interval [" + to_fraction(inside.lo) + ", " + to_fraction(inside.hi) +
                      ") holds fewer than " + std::to_string(want) + " grid points");
  std::vector<BigInt> cuts;
  while (static_cast<long>(cuts.size()) < want) {
    BigInt k = k_lo + rng.below(avail);
    if (std::find(cuts.begin(), cuts.end(), k) == cuts.end()) cuts.push_back(k);
  }
  std::sort(cuts.begin(), cuts.end());
  for (long i = 0; i < count; ++i) {
    out.push_back({PiInterval::closed_open(Rational(cuts[2 * i]) / grid,
                                           Rational(cuts[2 * i + 1]) / grid),
                   rng.unit_disk()});
  }
}

}  // namespace detail

// Deterministic test spectrum: pieces_per_annulus disjoint pieces per listed scale,
// endpoints on the k/(64 q) grid (units of pi) inside that annulus, values in the
// unit disk. Positive-axis pieces only.
inline PiecewiseConstSpectrum random_spectrum(std::uint64_t seed, std::span<const long> annuli,
                                              const Dilation& d, int pieces_per_annulus) {
  if (pieces_per_annulus < 1) throw DomainError("random_spectrum: pieces_per_annulus must be >= 1");
  Rng rng(seed);
  std::vector<SpectrumPiece> out;
  for (const long j : annuli)
    detail::random_pieces_in(rng, annulus(d, j).pos, 64 * d.q(), pieces_per_annulus, out);
  return PiecewiseConstSpectrum(std::move(out), false);
}

// Deterministic real-signal test spectrum confined to one band pair: pieces on
// the same grid inside the (j, m) band, mirrored to a hermitian spectrum.
inline PiecewiseConstSpectrum random_band_spectrum(std::uint64_t seed, const Dilation& d, long j,
                                                   long m, int pieces) {
  if (pieces < 1) throw DomainError("random_band_spectrum: pieces must be >= 1");
  Rng rng(seed);
  std::vector<SpectrumPiece> out;
  detail::random_pieces_in(rng, support_of(d, j, m).pos, 64 * d.q(), pieces, out);
  return hermitize(PiecewiseConstSpectrum(std::move(out), false));
}

// Finite combination of same-band atoms; evaluates as sum coeff * atom_freq.
struct BandTrigSpectrum {
  Dilation dilation;
  Flavor flavor = Flavor::New;
  // (j, m) -> list of (n, coefficient)
  std::map<std::pair<long, long>, std::vector<std::pair<long, std::complex<double>>>> bands;

  std::complex<double> eval(double omega) const {
    std::complex<double> acc = 0.0;
    for (const auto& [band, terms] : bands) {
      const auto [j, m] = band;
      for (const auto& [n, coeff] : terms)
        acc += coeff * atom_freq(Atom(dilation, {j, n, m}, flavor), omega);
    }
    return acc;
  }
};

}  // namespace rlpw
