#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "rlpw/spectra.hpp"

using namespace rlpw;
using std::numbers::pi;

namespace {

PiecewiseConstSpectrum one_piece(Rational lo, Rational hi, std::complex<double> v = 1.0) {
  return PiecewiseConstSpectrum({{PiInterval::closed_open(lo, hi), v}});
}

}  // namespace

TEST_CASE("norm accounts piece lengths exactly", "[spectra]") {
  CHECK(norm_sq(one_piece(1, Rational(4, 3))) == Catch::Approx(1.0 / 6.0).margin(1e-16));
  CHECK(norm_sq(PiecewiseConstSpectrum{}) == 0.0);
  const Dilation d(5, 3);
  CHECK(norm_sq(mask_spectrum(d, 0, 1, Flavor::New)) == Catch::Approx(1.0).margin(1e-15));
  CHECK(norm_sq(mask_spectrum(d, 0, 1, Flavor::Auscher)) ==
        Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(norm_sq(mask_spectrum(d, 2, 2, Flavor::New)) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("time evaluation of a single piece", "[spectra]") {
  const auto f = one_piece(1, Rational(4, 3));
  CHECK(eval_time(f, 0.0).real() == Catch::Approx(1.0 / 6.0).margin(1e-16));
  CHECK(eval_time(f, 0.0).imag() == 0.0);
  // against the direct antiderivative at a few points
  for (const double x : {0.7, -2.3, 11.0}) {
    const std::complex<double> want =
        (std::exp(std::complex<double>(0, 4.0 * pi / 3.0 * x)) -
         std::exp(std::complex<double>(0, pi * x))) /
        (2.0 * pi * std::complex<double>(0, x));
    CHECK(std::abs(eval_time(f, x) - want) < 1e-15);
  }
  CHECK_THROWS_AS(eval_time(f, std::nan("")), DomainError);
}

TEST_CASE("band mask spectrum reproduces the time kernel", "[spectra]") {
  const Dilation d(5, 3);
  const auto f = mask_spectrum(d, 0, 1, Flavor::New);
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const double t = rng.uniform(-10.0, 10.0);
    const auto v = eval_time(f, t);
    CHECK(std::abs(v - std::complex<double>(psi_time(d, 1, t))) < 1e-12);
  }
}

TEST_CASE("symmetric rectangle gives the classical sinc", "[spectra]") {
  const PiecewiseConstSpectrum f({{PiInterval::closed_open(-1, 1), 1.0}}, true);
  Rng rng(22);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-5.0, 5.0);
    const auto v = eval_time(f, x);
    CHECK(v.real() == Catch::Approx(std::sin(pi * x) / (pi * x)).margin(1e-13));
    CHECK(std::fabs(v.imag()) < 1e-16);
  }
}

TEST_CASE("restriction is an exact band projection", "[spectra]") {
  const Dilation d(5, 3);
  const SupportPair band = support_of(d, 0, 1);

  const auto full = restrict(one_piece(1, 2), band);
  REQUIRE(full.pieces().size() == 1);
  CHECK(full.pieces()[0].interval == PiInterval::closed_open(1, Rational(4, 3)));

  const auto cut = restrict(one_piece(Rational(1, 2), Rational(6, 5)), band);
  REQUIRE(cut.pieces().size() == 1);
  CHECK(cut.pieces()[0].interval == PiInterval::closed_open(1, Rational(6, 5)));

  CHECK(restrict(one_piece(Rational(7, 4), 2), band).empty());

  // idempotent and norm-nonincreasing
  const auto f = one_piece(Rational(9, 10), Rational(3, 2), {0.4, -1.1});
  const auto once = restrict(f, band);
  const auto twice = restrict(once, band);
  CHECK(once.pieces().size() == twice.pieces().size());
  CHECK(norm_sq(once) <= norm_sq(f));
  CHECK(norm_sq(twice) == norm_sq(once));
}

TEST_CASE("spectrum invariants are enforced", "[spectra]") {
  CHECK_THROWS_AS(one_piece(1, 1), DomainError);
  CHECK_THROWS_AS(PiecewiseConstSpectrum({{PiInterval::closed_open(1, 2), 1.0},
                                          {PiInterval::closed_open(Rational(3, 2), 3), 1.0}}),
                  DomainError);
  // hermitian: mirror piece must exist with conjugate value
  CHECK_THROWS_AS(PiecewiseConstSpectrum({{PiInterval::closed_open(1, 2), {0, 1}}}, true),
                  DomainError);
  // hermitian: a self-mirrored piece must be real
  CHECK_THROWS_AS(PiecewiseConstSpectrum({{PiInterval::closed_open(-1, 1), {0, 1}}}, true),
                  DomainError);
  CHECK_NOTHROW(PiecewiseConstSpectrum({{PiInterval::closed_open(-1, 1), 2.0}}, true));
}

TEST_CASE("hermitize mirrors positive pieces into a real signal", "[spectra]") {
  const auto h = hermitize(one_piece(1, Rational(4, 3), {0.3, 0.4}));
  CHECK(h.hermitian());
  CHECK(h.pieces().size() == 2);
  Rng rng(23);
  for (int i = 0; i < 25; ++i)
    CHECK(std::fabs(eval_time(h, rng.uniform(-20.0, 20.0)).imag()) < 1e-12);
  CHECK_THROWS_AS(hermitize(one_piece(-1, 1)), DomainError);
}

TEST_CASE("random spectra are deterministic and land inside their annuli", "[spectra]") {
  const Dilation d(5, 3);
  const std::vector<long> annuli{-1, 0, 1};
  const auto a = random_spectrum(42, annuli, d, 2);
  const auto b = random_spectrum(42, annuli, d, 2);
  REQUIRE(a.pieces().size() == 6);
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    CHECK(a.pieces()[i].interval == b.pieces()[i].interval);
    CHECK(a.pieces()[i].value == b.pieces()[i].value);
    CHECK(std::abs(a.pieces()[i].value) < 1.0);
  }
  for (const auto& p : a.pieces()) {
    CHECK(denominator(p.interval.lo * 64 * 3) == 1);  // on the 1/(64 q) lattice
    bool inside = false;
    for (const long j : annuli) inside = inside || annulus(d, j).pos.covers(p.interval);
    CHECK(inside);
  }
  CHECK(random_spectrum(43, annuli, d, 2).pieces()[0].interval != a.pieces()[0].interval);
  CHECK_THROWS_AS(random_spectrum(1, annuli, d, 0), DomainError);
}

TEST_CASE("random band spectra are hermitian members of their band", "[spectra]") {
  const Dilation d(5, 3);
  const auto f = random_band_spectrum(7, d, 1, 2, 2);
  CHECK(f.hermitian());
  CHECK(f.pieces().size() == 4);
  const SupportPair band = support_of(d, 1, 2);
  for (const auto& p : f.pieces())
    CHECK((band.pos.covers(p.interval) || band.neg.covers(p.interval)));
}

TEST_CASE("spectrum JSON round-trips exactly", "[spectra]") {
  const auto f = hermitize(one_piece(Rational(7, 6), Rational(5, 4), {0.25, -0.5}));
  const auto back = PiecewiseConstSpectrum::from_json(f.to_json());
  REQUIRE(back.pieces().size() == f.pieces().size());
  CHECK(back.hermitian());
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    CHECK(back.pieces()[i].interval.lo == f.pieces()[i].interval.lo);
    CHECK(back.pieces()[i].interval.hi == f.pieces()[i].interval.hi);
    CHECK(back.pieces()[i].value == f.pieces()[i].value);
  }
}

TEST_CASE("trig spectra evaluate as coefficient sums", "[spectra]") {
  const Dilation d(5, 3);
  BandTrigSpectrum f{d, Flavor::New, {}};
  f.bands[{0, 1}] = {{0, {1.0, 0.0}}, {1, {0.0, 1.0}}};
  const double w = 1.25 * pi;
  const auto want = atom_freq(Atom(d, {0, 0, 1}, Flavor::New), w) +
                    std::complex<double>(0, 1) * atom_freq(Atom(d, {0, 1, 1}, Flavor::New), w);
  CHECK(std::abs(f.eval(w) - want) < 1e-15);
  CHECK(f.eval(2.0 * pi) == std::complex<double>(0.0));
}

TEST_CASE("phase integral helpers are stable near zero", "[spectra]") {
  CHECK(detail::sinc(0.0) == 1.0);
  CHECK(detail::sinc(5e-5) == Catch::Approx(std::sin(5e-5) / 5e-5).margin(1e-16));
  CHECK(detail::sinc(2.0) == std::sin(2.0) / 2.0);
  CHECK(detail::phase_integral(0.5, 3.0, 0.0) == std::complex<double>(0.5));
}
