#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rlpw/csv.hpp"
#include "rlpw/random.hpp"
#include "rlpw/transform.hpp"

using namespace rlpw;
using std::numbers::pi;

namespace {

const std::vector<long> kScaleZero{0};

PiecewiseConstSpectrum flat_band_signal() {
  return PiecewiseConstSpectrum({{PiInterval::closed_open(1, Rational(4, 3)), 1.0}});
}

CoefficientSet random_set(Rng& rng, const Dilation& d, int atoms, long n_span) {
  CoefficientSet c{d, Flavor::New, {}};
  for (int k = 0; k < atoms; ++k) {
    const AtomIndex idx{rng.uniform_int(-1, 1), rng.uniform_int(-n_span, n_span),
                        rng.uniform_int(1, d.subbands())};
    c.entries[idx] += rng.unit_disk();
  }
  return c;
}

}  // namespace

TEST_CASE("analyzing an atom spectrum recovers the unit coefficient", "[transform]") {
  const Dilation d(5, 3);
  const auto c = analyze(mask_spectrum(d, 0, 1, Flavor::New), d, kScaleZero, 3, Flavor::New);
  CHECK(c.entries.size() == 7);  // only the (0, m=1) band intersects
  for (const auto& [idx, v] : c.entries) {
    const double want = idx == AtomIndex{0, 0, 1} ? 1.0 : 0.0;
    CHECK(std::abs(v - want) < 1e-12);
  }
}

TEST_CASE("flat one-sided band has the known coefficient ladder", "[transform]") {
  const Dilation d(5, 3);
  const auto c = analyze(flat_band_signal(), d, kScaleZero, 5, Flavor::New);
  CHECK(std::abs(c.entries.at({0, 0, 1})) == Catch::Approx(0.28867513459481288).margin(1e-15));
  CHECK(std::abs(c.entries.at({0, 1, 1})) == Catch::Approx(0.18377629847393068).margin(1e-15));
  CHECK(std::abs(c.entries.at({0, -1, 1})) == Catch::Approx(0.18377629847393068).margin(1e-15));
  CHECK(std::abs(c.entries.at({0, 3, 1})) == Catch::Approx(0.061258766157976894).margin(1e-15));
  CHECK(std::abs(c.entries.at({0, 2, 1})) < 1e-14);
  CHECK(std::abs(c.entries.at({0, 4, 1})) < 1e-14);
}

TEST_CASE("analysis preconditions and degenerate inputs", "[transform]") {
  const Dilation d(5, 3);
  CHECK(analyze(PiecewiseConstSpectrum{}, d, kScaleZero, 4, Flavor::New).entries.empty());
  const PiecewiseConstSpectrum leak(
      {{PiInterval::closed_open(Rational(1, 2), Rational(6, 5)), 1.0}});
  CHECK_THROWS_WITH(analyze(leak, d, kScaleZero, 4, Flavor::New),
                    Catch::Matchers::ContainsSubstring("1/2"));
  CHECK_THROWS_AS(analyze(flat_band_signal(), d, kScaleZero, -1, Flavor::New), DomainError);
  // a piece spanning two adjacent annuli is fine when both scales are requested
  const PiecewiseConstSpectrum wide({{PiInterval::closed_open(Rational(4, 5), Rational(7, 6)), 1.0}});
  const std::vector<long> two{0, 1};
  CHECK_NOTHROW(analyze(wide, d, two, 2, Flavor::New));
  CHECK_THROWS_AS(analyze(wide, d, kScaleZero, 2, Flavor::New), DomainError);
}

TEST_CASE("synthesis groups coefficients by band and evaluates linearly", "[transform]") {
  const Dilation d(5, 3);
  CoefficientSet c{d, Flavor::New, {}};
  c.entries[{0, 0, 1}] = 1.0;
  c.entries[{0, 1, 1}] = {0.0, 1.0};
  c.entries[{1, -2, 2}] = {0.5, -0.5};
  const BandTrigSpectrum f = synthesize(c);
  CHECK(f.bands.size() == 2);
  CHECK(f.bands.at({0, 1}).size() == 2);
  Rng rng(51);
  for (int i = 0; i < 40; ++i) {
    const double w = rng.uniform(-7.0, 7.0);
    std::complex<double> want = 0.0;
    for (const auto& [idx, v] : c.entries) want += v * atom_freq(Atom(d, idx, Flavor::New), w);
    CHECK(std::abs(f.eval(w) - want) < 1e-14);
  }
  CHECK(synthesize(CoefficientSet{d, Flavor::New, {}}).bands.empty());
}

TEST_CASE("re-analysis inverts synthesis", "[transform]") {
  const Dilation d(5, 3);
  CoefficientSet in{d, Flavor::New, {}};
  in.entries[{0, 3, 2}] = {2.0, -1.0};
  const CoefficientSet out = analyze_trig(synthesize(in), 4);
  CHECK(std::abs(out.entries.at({0, 3, 2}) - std::complex<double>(2.0, -1.0)) < 1e-10);
  for (const auto& [idx, v] : out.entries)
    if (idx != AtomIndex{0, 3, 2}) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("round-trip identity over random coefficient sets", "[transform]") {
  const Dilation d(5, 3);
  Rng rng(52);
  double max_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const CoefficientSet in = random_set(rng, d, 40, 6);
    const CoefficientSet out = analyze_trig(synthesize(in), 6);
    for (const auto& [idx, v] : out.entries) {
      const auto it = in.entries.find(idx);
      const std::complex<double> want = it == in.entries.end() ? 0.0 : it->second;
      max_err = std::max(max_err, std::abs(v - want));
    }
  }
  CHECK(max_err < 1e-9);
}

TEST_CASE("unit-amplitude flavor shrinks round-trip coefficients by q", "[transform]") {
  const Dilation d(5, 3);
  CoefficientSet in{d, Flavor::Auscher, {}};
  in.entries[{0, 2, 1}] = {0.9, 0.3};
  const CoefficientSet out = analyze_trig(synthesize(in), 3);
  CHECK(std::abs(out.entries.at({0, 2, 1}) - std::complex<double>(0.3, 0.1)) < 1e-12);
}

TEST_CASE("analysis is linear in the spectrum", "[transform]") {
  const Dilation d(5, 3);
  const std::complex<double> alpha{0.7, -0.2}, beta{-1.1, 0.4};
  const PiecewiseConstSpectrum f({{PiInterval::closed_open(1, Rational(7, 6)), alpha}});
  const PiecewiseConstSpectrum g({{PiInterval::closed_open(Rational(7, 6), Rational(4, 3)), beta}});
  const PiecewiseConstSpectrum sum({{PiInterval::closed_open(1, Rational(7, 6)), alpha},
                                    {PiInterval::closed_open(Rational(7, 6), Rational(4, 3)), beta}});
  const auto cf = analyze(f, d, kScaleZero, 4, Flavor::New);
  const auto cg = analyze(g, d, kScaleZero, 4, Flavor::New);
  const auto cs = analyze(sum, d, kScaleZero, 4, Flavor::New);
  for (const auto& [idx, v] : cs.entries)
    CHECK(std::abs(v - (cf.entries.at(idx) + cg.entries.at(idx))) < 1e-12);
}

TEST_CASE("partial energy sums climb the analytic series", "[transform]") {
  const Dilation d(5, 3);
  const ParsevalReport rep = parseval_partial(flat_band_signal(), d, kScaleZero,
                                              {1, 4, 16, 64, 256, 1024, 4096}, Flavor::New);
  CHECK(rep.norm_sq_f == Catch::Approx(1.0 / 6.0).margin(1e-16));
  REQUIRE(rep.partial_sums.size() == 7);
  CHECK(rep.partial_sums.front().second == Catch::Approx(0.15088078909489185).margin(1e-12));
  CHECK(rep.partial_sums.back().second == Catch::Approx(0.1666584211277971).margin(1e-12));
  CHECK(rep.deficit_at_max_N == Catch::Approx(8.2455388695692453e-6).margin(1e-12));

  for (const auto& [N, s] : rep.partial_sums) {
    double series = 1.0 / 12.0;
    for (long k = 1; k <= N; k += 2) series += 2.0 / (3.0 * pi * pi * k * k);
    CHECK(s == Catch::Approx(series).margin(1e-12));
  }
  for (std::size_t i = 1; i < rep.partial_sums.size(); ++i) {
    CHECK(rep.partial_sums[i].second >= rep.partial_sums[i - 1].second);
    CHECK(rep.partial_sums[i].second <= rep.norm_sq_f + 1e-10);
  }
}

TEST_CASE("single-atom spectrum has no energy deficit", "[transform]") {
  const Dilation d(5, 3);
  const ParsevalReport rep =
      parseval_partial(mask_spectrum(d, 0, 2, Flavor::New), d, kScaleZero, {2}, Flavor::New);
  CHECK(rep.deficit_at_max_N < 1e-12);
}

TEST_CASE("parseval edge cases", "[transform]") {
  const Dilation d(5, 3);
  const ParsevalReport zero =
      parseval_partial(PiecewiseConstSpectrum{}, d, kScaleZero, {1, 2}, Flavor::New);
  CHECK(zero.norm_sq_f == 0.0);
  CHECK(zero.partial_sums.back().second == 0.0);
  CHECK(zero.deficit_at_max_N == 0.0);
  CHECK_THROWS_AS(
      parseval_partial(flat_band_signal(), d, kScaleZero, {-1, 2}, Flavor::New), DomainError);
  // unsorted input is evaluated in ascending order
  const ParsevalReport rep =
      parseval_partial(flat_band_signal(), d, kScaleZero, {16, 1, 4}, Flavor::New);
  CHECK(rep.partial_sums.front().first == 1);
  CHECK(rep.partial_sums.back().first == 16);
}

TEST_CASE("parseval report serializes sums and deficit", "[transform]") {
  const Dilation d(5, 3);
  const auto j =
      parseval_partial(flat_band_signal(), d, kScaleZero, {1, 4}, Flavor::New).to_json();
  CHECK(j.at("norm_sq").get<double>() == Catch::Approx(1.0 / 6.0).margin(1e-16));
  CHECK(j.at("partials").size() == 2);
  CHECK(j.at("partials")[0][0].get<long>() == 1);
  CHECK(j.contains("deficit"));
}

TEST_CASE("coefficient CSV lists one row per atom", "[transform]") {
  const Dilation d(5, 3);
  CoefficientSet c{d, Flavor::New, {}};
  c.entries[{0, -1, 2}] = {0.5, -0.25};
  c.entries[{1, 0, 1}] = 1.0;
  std::ostringstream os;
  write_coeffs_csv(os, c);
  CHECK(os.str() ==
        "# rlpw-coeffs v1\nj,n,m,re,im\n0,-1,2,0.5,-0.25\n1,0,1,1,0\n");
}
