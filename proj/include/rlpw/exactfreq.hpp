#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rlpw/dilation.hpp"
#include "rlpw/interval.hpp"

namespace rlpw {

// Band pair of subband m at scale j:
// positive part [M^{-j}(q+m-1)/q, M^{-j}(q+m)/q) in units of pi, negative mirror.
inline SupportPair support_of(const Dilation& d, long j, long m) {
  d.require_index({j, 0, m});
  const Rational step = d.pow(-j) / d.q();
  return SupportPair::mirror_of(
      PiInterval::closed_open(step * (d.q() + m - 1), step * (d.q() + m)));
}

// Union of all subbands at scale j: [M^{-j}, M^{-j+1}) in units of pi.
inline SupportPair annulus(const Dilation& d, long j) {
  Dilation::require_scale(j);
  const Rational lo = d.pow(-j);
  return SupportPair::mirror_of(PiInterval::closed_open(lo, lo * d.ratio()));
}

// Sampling geometry of one (j, m) band. All frequency fields in units of pi;
// the period is in seconds. F_H / B = q + m is an exact integer, T * B = pi.
struct BandSpace {
  Dilation dilation;
  long j;
  long m;
  Rational f_lo;       // lower band edge
  Rational f_hi;       // upper band edge
  Rational bandwidth;  // f_hi - f_lo
  Rational period;     // T = q M^j
  Rational fs;         // angular sampling rate, 2 * bandwidth
};

inline BandSpace band_space(const Dilation& d, long j, long m) {
  const SupportPair s = support_of(d, j, m);
  const Rational b = s.pos.length();
  return BandSpace{d, j, m, s.pos.lo, s.pos.hi, b, d.q() * d.pow(j), 2 * b};
}

// Exact audit of the subband tiling over a contiguous scale range.
struct TilingReport {
  bool disjoint = true;
  bool cover = true;
  std::vector<std::pair<Rational, Rational>> gaps;      // units of pi
  std::vector<std::pair<Rational, Rational>> overlaps;  // units of pi
  Rational union_lo;  // target stack [M^{-j_hi}, M^{-j_lo+1})
  Rational union_hi;

  bool pass() const { return disjoint && cover; }

  nlohmann::ordered_json to_json() const {
    auto pairs = [](const std::vector<std::pair<Rational, Rational>>& v) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& [a, b] : v) arr.push_back({to_fraction(a), to_fraction(b)});
      return arr;
    };
    nlohmann::ordered_json out;
    out["disjoint"] = disjoint;
    out["cover"] = cover;
    out["gaps"] = pairs(gaps);
    out["overlaps"] = pairs(overlaps);
    out["union_lo"] = to_fraction(union_lo);
    out["union_hi"] = to_fraction(union_hi);
    return out;
  }
};

// Checks that the positive supports for j in [j_lo, j_hi], m in [1, p-q] are
// pairwise disjoint and abut into exactly [M^{-j_hi}, M^{-j_lo+1}) (units of pi).
inline TilingReport tiling_check(const Dilation& d, long j_lo, long j_hi) {
  if (j_lo > j_hi) throw DomainError("tiling_check requires j_lo <= j_hi");
  std::vector<PiInterval> bands;
  for (long j = j_lo; j <= j_hi; ++j)
    for (long m = 1; m <= d.subbands(); ++m)
      bands.push_back(support_of(d, j, m).pos);
  std::sort(bands.begin(), bands.end(),
            [](const PiInterval& a, const PiInterval& b) { return a.lo < b.lo; });

  TilingReport rep;
  rep.union_lo = d.pow(-j_hi);
  rep.union_hi = d.pow(-j_lo) * d.ratio();

  Rational cursor = rep.union_lo;
  for (const PiInterval& band : bands) {
    if (band.lo > cursor) rep.gaps.emplace_back(cursor, band.lo);
    if (band.lo < cursor) rep.overlaps.emplace_back(band.lo, std::min(cursor, band.hi));
    if (band.hi > cursor) cursor = band.hi;
  }
  if (cursor < rep.union_hi) rep.gaps.emplace_back(cursor, rep.union_hi);

  rep.disjoint = rep.overlaps.empty();
  rep.cover = rep.gaps.empty();
  return rep;
}

}  // namespace rlpw
