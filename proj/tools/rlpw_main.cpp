// Command-line front end: verification reports, figure data, file I/O.
// Exit codes: 0 pass, 1 check failed, 2 usage error, 3 convergence failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rlpw/rlpw.hpp"

namespace {

using namespace rlpw;
using nlohmann::ordered_json;

unsigned jobs_from_env() {
  if (const char* s = std::getenv("RLPW_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  return std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

long parse_long(const std::string& s) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw DomainError("");
    return v;
  } catch (const std::exception&) {
    throw DomainError("expected an integer, got '" + s + "'");
  }
}

IndexRange parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw DomainError("expected a:b, got '" + s + "'");
  return IndexRange(parse_long(parts[0]), parse_long(parts[1]));
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_long(part));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::vector<long> range_values(IndexRange r) {
  std::vector<long> out;
  for (long v = r.lo; v <= r.hi; ++v) out.push_back(v);
  return out;
}

// lo:hi:step, each an exact decimal or fraction; inclusive of hi when it lands
// on the lattice.
std::vector<Rational> parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw DomainError("expected lo:hi:step, got '" + s + "'");
  const Rational lo = parse_number(parts[0]);
  const Rational hi = parse_number(parts[1]);
  const Rational step = parse_number(parts[2]);
  if (step <= 0) throw DomainError("grid step must be positive");
  if (hi < lo) throw DomainError("grid requires lo <= hi");
  if ((hi - lo) / step > 20'000'000) throw DomainError("grid has more than 2e7 points");
  std::vector<Rational> out;
  for (Rational x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

void emit(const std::string& artifact, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << artifact;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file '" + out_path + "'");
  f << artifact;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string pi_str(const Rational& r) {
  std::ostringstream os;
  os << to_fraction(r) << "*pi (~" << format_g17(to_double(r) * std::numbers::pi) << ")";
  return os.str();
}

AtomIndex random_index(Rng& rng, const Dilation& d, IndexRange j_r, IndexRange n_r) {
  return {rng.uniform_int(j_r.lo, j_r.hi), rng.uniform_int(n_r.lo, n_r.hi),
          rng.uniform_int(1, d.subbands())};
}

int cmd_atoms(long p, long q, long m, long j, const std::string& flavor_s,
              const std::string& domain, const std::string& grid_s, int fig,
              const std::string& out) {
  std::string dom = domain, grid = grid_s;
  long pp = p, qq = q, mm = m, jj = j;
  if (fig != 0) {
    pp = 5;
    qq = 3;
    mm = fig;
    jj = 1;
    dom = "freq-scaled";
    grid = "0:2:0.005";
  }
  const Dilation d(pp, qq);
  const Flavor flavor = flavor_from_name(flavor_s);
  if (grid.empty()) throw DomainError("atoms: --grid is required (or use --fig)");
  const std::vector<Rational> pts = parse_grid(grid);
  std::vector<std::pair<double, double>> rows;
  rows.reserve(pts.size());
  if (dom == "time") {
    const Atom a(d, {0, 0, mm}, flavor);
    for (const auto& x : pts) rows.emplace_back(to_double(x), atom_time(a, to_double(x)));
  } else if (dom == "freq") {
    for (const auto& w : pts) rows.emplace_back(to_double(w), mask_value(d, mm, flavor, w));
  } else if (dom == "freq-scaled") {
    for (const auto& w : pts)
      rows.emplace_back(to_double(w), scaled_mask_value(d, jj, mm, flavor, w));
  } else {
    throw DomainError("atoms: --domain must be time, freq or freq-scaled");
  }
  std::ostringstream os;
  write_kernel_csv(os, dom == "time" ? "arg" : "omega_over_pi", rows);
  emit(os.str(), out);
  if (dom != "time") {
    const SupportPair s = support_of(d, dom == "freq" ? 0 : jj, mm);
    std::cerr << "atoms: band [" << pi_str(s.pos.lo) << ", " << pi_str(s.pos.hi) << "), "
              << rows.size() << " rows\n";
  } else {
    std::cerr << "atoms: time kernel, " << rows.size() << " rows\n";
  }
  return 0;
}

int cmd_gram(long p, long q, const std::string& flavor_s, const std::string& j_range,
             const std::string& n_range, double tol, double expected_diag,
             const std::string& out) {
  const Dilation d(p, q);
  const Flavor flavor = flavor_from_name(flavor_s);
  const double diag = expected_diag > 0 ? expected_diag : natural_diag(d, flavor);
  const GramReport rep =
      gram(d, flavor, parse_range(j_range), parse_range(n_range), tol, diag, jobs_from_env());
  emit(dump(rep.to_json()), out);
  std::cerr << "gram: " << rep.indices.size() << " atoms, max_offdiag=" << rep.max_offdiag
            << ", max_diag_dev=" << rep.max_diag_dev << " -> "
            << (rep.pass ? "PASS" : "FAIL") << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_auscher(long p, long q, long j, long n, long m, const std::string& out) {
  const Dilation d(p, q);
  const Rational nsq = auscher_norm_sq(d, {j, n, m});
  const Atom a(d, {j, n, m}, Flavor::Auscher);
  const QuadResult oracle = quad_ip_freq_full(a, a, 1e-9);
  const bool oracle_agrees = std::abs(oracle.value - to_double(nsq)) <= 1e-8;
  const bool pass = nsq == 1 && oracle_agrees;
  ordered_json rep{{"norm_sq", to_fraction(nsq)},
                   {"norm_sq_decimal", to_double(nsq)},
                   {"expected", 1.0},
                   {"oracle", {oracle.value.real(), oracle.value.imag()}},
                   {"oracle_agrees", oracle_agrees},
                   {"pass", pass}};
  emit(dump(rep), out);
  std::cerr << "auscher: norm_sq = " << to_fraction(nsq) << " = " << to_double(nsq)
            << " vs expected 1 -> " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_tiling(long p, long q, const std::string& j_range, const std::string& out) {
  const Dilation d(p, q);
  const IndexRange r = parse_range(j_range);
  const TilingReport rep = tiling_check(d, r.lo, r.hi);
  emit(dump(rep.to_json()), out);
  std::cerr << "tiling: union [" << pi_str(rep.union_lo) << ", " << pi_str(rep.union_hi)
            << "), " << rep.gaps.size() << " gaps, " << rep.overlaps.size() << " overlaps -> "
            << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return rep.pass() ? 0 : 1;
}

int cmd_parseval(long p, long q, const std::string& flavor_s, const std::string& j_range,
                 const std::string& spectrum_path, std::uint64_t seed, bool seeded, int pieces,
                 const std::string& n_list, double tol, const std::string& out) {
  const Dilation d(p, q);
  const Flavor flavor = flavor_from_name(flavor_s);
  const std::vector<long> j_set = range_values(parse_range(j_range));
  PiecewiseConstSpectrum f;
  if (!spectrum_path.empty()) {
    std::ifstream in(spectrum_path);
    if (!in) throw DomainError("cannot open spectrum file '" + spectrum_path + "'");
    nlohmann::json sj;
    in >> sj;
    f = PiecewiseConstSpectrum::from_json(sj);
  } else if (seeded) {
    f = random_spectrum(seed, j_set, d, pieces);
  } else {
    throw DomainError("parseval: provide --spectrum or --seed");
  }
  const ParsevalReport rep = parseval_partial(f, d, j_set, parse_long_list(n_list), flavor);
  bool monotone = true;
  for (std::size_t i = 1; i < rep.partial_sums.size(); ++i)
    monotone = monotone && rep.partial_sums[i].second >= rep.partial_sums[i - 1].second;
  const bool bounded = rep.partial_sums.empty() ||
                       rep.partial_sums.back().second <= rep.norm_sq_f + 1e-10;
  const bool pass = monotone && bounded && rep.deficit_at_max_N <= tol * rep.norm_sq_f + 1e-15;
  ordered_json rj = rep.to_json();
  rj["tol"] = tol;
  rj["pass"] = pass;
  emit(dump(rj), out);
  std::cerr << "parseval: norm_sq=" << rep.norm_sq_f << ", deficit=" << rep.deficit_at_max_N
            << " (tol " << tol * 100 << "% of energy) -> " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_roundtrip(long p, long q, const std::string& flavor_s, std::uint64_t seed, int count,
                  int atoms, const std::string& j_range, const std::string& n_range, double tol,
                  const std::string& out) {
  const Dilation d(p, q);
  const Flavor flavor = flavor_from_name(flavor_s);
  const IndexRange j_r = parse_range(j_range), n_r = parse_range(n_range);
  if (j_r.size() == 0 || n_r.size() == 0) throw DomainError("roundtrip: empty range");
  const long n_max = std::max(std::labs(n_r.lo), std::labs(n_r.hi));
  Rng rng(seed);
  double max_err = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    CoefficientSet in{d, flavor, {}};
    for (int k = 0; k < atoms; ++k) in.entries[random_index(rng, d, j_r, n_r)] += rng.unit_disk();
    const CoefficientSet back = analyze_trig(synthesize(in), n_max);
    for (const auto& [idx, c] : back.entries) {
      const auto it = in.entries.find(idx);
      const std::complex<double> want = it == in.entries.end() ? 0.0 : it->second;
      max_err = std::max(max_err, std::abs(c - want));
    }
    for (const auto& [idx, c] : in.entries)
      if (!back.entries.count(idx)) max_err = std::max(max_err, std::abs(c));
  }
  const bool pass = max_err < tol;
  ordered_json rep{{"count", count}, {"atoms_per_set", atoms}, {"max_abs_err", max_err},
                   {"tol", tol},     {"pass", pass}};
  emit(dump(rep), out);
  std::cerr << "roundtrip: " << count << " sets, max_abs_err=" << max_err << " -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_bandpass(long p, long q, long j, long m, std::uint64_t seed, int pieces,
                 const std::string& n_list, const std::string& grid_s, double tol,
                 const std::string& out) {
  const Dilation d(p, q);
  const PiecewiseConstSpectrum f = random_band_spectrum(seed, d, j, m, pieces);
  std::vector<double> grid;
  for (const auto& x : parse_grid(grid_s)) grid.push_back(to_double(x));
  const auto errs = convergence_study(f, d, j, m, parse_long_list(n_list), grid);
  bool decreasing = true;
  for (std::size_t i = 1; i < errs.size(); ++i)
    decreasing = decreasing && errs[i].second < errs[i - 1].second;
  const bool pass = !errs.empty() && decreasing && errs.back().second < tol;
  std::ostringstream os;
  write_bandpass_csv(os, errs);
  emit(os.str(), out);
  std::cerr << "bandpass: final rel_l2_error=" << (errs.empty() ? 0.0 : errs.back().second)
            << " at n_max=" << (errs.empty() ? 0L : errs.back().first) << " -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_oracle(long p, long q, const std::string& flavor_s, const std::string& op,
               std::uint64_t seed, int count, long m, double tol, const std::string& out) {
  const Dilation d(p, q);
  const Flavor flavor = flavor_from_name(flavor_s);
  Rng rng(seed);
  ordered_json comparisons = ordered_json::array();
  bool pass = true;
  if (op == "ip") {
    const double t = tol > 0 ? tol : 1e-8;
    for (int k = 0; k < count; ++k) {
      const AtomIndex ia = random_index(rng, d, {-2, 2}, {-4, 4});
      AtomIndex ib = random_index(rng, d, {-2, 2}, {-4, 4});
      if (k % 2 == 0) {  // exercise the same-band cases half the time
        ib.j = ia.j;
        ib.m = ia.m;
      }
      const OracleComparison c = compare_ip(Atom(d, ia, flavor), Atom(d, ib, flavor), t);
      pass = pass && c.pass;
      comparisons.push_back(c.to_json());
    }
  } else if (op == "ift") {
    const double t = tol > 0 ? tol : 1e-6;
    for (int k = 0; k < count; ++k) {
      const double x = rng.uniform(-5.0, 5.0);
      OracleComparison c;
      c.op = "ift_mask";
      c.closed_form = psi_time(d, m, x) * (flavor == Flavor::Auscher
                                               ? 1.0 / std::sqrt(static_cast<double>(d.q()))
                                               : 1.0);
      c.oracle = ift_mask(d, m, flavor, x, 1e-9);
      c.pass = std::abs(c.closed_form - c.oracle) <= t;
      pass = pass && c.pass;
      comparisons.push_back(c.to_json());
    }
  } else {
    throw DomainError("oracle: --op must be ip or ift");
  }
  ordered_json rep{{"op", op}, {"count", count}, {"pass", pass},
                   {"comparisons", std::move(comparisons)}};
  emit(dump(rep), out);
  std::cerr << "oracle: " << count << " comparisons (" << op << ") -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for the rational Littlewood-Paley wavelet family"};
  app.require_subcommand(1);
  int rc = 0;

  // One option set per subcommand: a default bound through a shared variable
  // would overwrite every other subcommand's default at setup time.
  long p = 0, q = 0, m = 1, j = 0, n = 0;
  std::string flavor = "new", out;
  std::uint64_t seed = 0;

  const auto add_pq = [&](CLI::App* c, bool required = true) {
    auto* po = c->add_option("--p", p, "dilation numerator");
    auto* qo = c->add_option("--q", q, "dilation denominator");
    if (required) {
      po->required();
      qo->required();
    }
    return std::make_pair(po, qo);
  };

  auto* c_atoms = app.add_subcommand("atoms", "sample a kernel to CSV");
  std::string at_domain = "freq", at_grid;
  int fig = 0;
  auto [ap, aq] = add_pq(c_atoms, false);
  auto* am = c_atoms->add_option("--m", m, "subband index");
  auto* aj = c_atoms->add_option("--j", j, "scale for freq-scaled domain");
  auto* ad = c_atoms->add_option("--domain", at_domain, "time, freq or freq-scaled")
                 ->capture_default_str();
  auto* ag =
      c_atoms->add_option("--grid", at_grid, "lo:hi:step (time in seconds, freq in pi units)");
  c_atoms->add_option("--flavor", flavor, "new or auscher")->capture_default_str();
  c_atoms->add_option("--out", out, "output path (default stdout)");
  auto* af = c_atoms->add_option("--fig", fig, "figure preset 1 or 2")
                 ->check(CLI::IsMember({1, 2}));
  for (auto* o : {ap, aq, am, aj, ad, ag}) af->excludes(o);
  c_atoms->callback([&] {
    if (fig == 0 && (ap->count() == 0 || aq->count() == 0))
      throw DomainError("atoms: --p and --q are required unless --fig is given");
    rc = cmd_atoms(p, q, m, j, flavor, at_domain, at_grid, fig, out);
  });

  auto* c_gram = app.add_subcommand("gram", "orthonormality audit over an index grid");
  std::string gr_j_range = "-1:1", gr_n_range = "-3:3";
  double gr_tol = 1e-10, gr_diag = -1.0;
  add_pq(c_gram);
  c_gram->add_option("--flavor", flavor, "new or auscher")->capture_default_str();
  c_gram->add_option("--j-range", gr_j_range, "a:b inclusive")->capture_default_str();
  c_gram->add_option("--n-range", gr_n_range, "a:b inclusive")->capture_default_str();
  c_gram->add_option("--tol", gr_tol, "pass tolerance")->capture_default_str();
  c_gram->add_option("--expected-diag", gr_diag,
                     "expected diagonal (default: the flavor's own)");
  c_gram->add_option("--out", out, "output path (default stdout)");
  c_gram->callback(
      [&] { rc = cmd_gram(p, q, flavor, gr_j_range, gr_n_range, gr_tol, gr_diag, out); });

  auto* c_aus = app.add_subcommand("auscher", "norm of a unit-amplitude atom vs 1");
  add_pq(c_aus);
  c_aus->add_option("--j", j, "scale");
  c_aus->add_option("--n", n, "translation");
  c_aus->add_option("--m", m, "subband");
  c_aus->add_option("--out", out, "output path (default stdout)");
  c_aus->callback([&] { rc = cmd_auscher(p, q, j, n, m, out); });

  auto* c_til = app.add_subcommand("tiling", "exact band-partition check");
  std::string til_j_range = "-8:8";
  add_pq(c_til);
  c_til->add_option("--j-range", til_j_range, "a:b inclusive")->capture_default_str();
  c_til->add_option("--out", out, "output path (default stdout)");
  c_til->callback([&] { rc = cmd_tiling(p, q, til_j_range, out); });

  auto* c_par = app.add_subcommand("parseval", "coefficient energy vs signal energy");
  std::string par_j_range = "0:0", par_spectrum, par_n_list = "1,4,16,64,256,1024,4096";
  double par_tol = 0.01;
  int par_pieces = 2;
  bool par_seeded = false;
  add_pq(c_par);
  c_par->add_option("--flavor", flavor, "new or auscher")->capture_default_str();
  c_par->add_option("--j-range", par_j_range, "scales to analyze, a:b inclusive")
      ->capture_default_str();
  c_par->add_option("--spectrum", par_spectrum, "spectrum JSON file");
  c_par->add_option("--seed", seed, "random test spectrum seed")
      ->each([&](const std::string&) { par_seeded = true; });
  c_par->add_option("--pieces", par_pieces, "pieces per annulus for --seed")
      ->capture_default_str();
  c_par->add_option("--N-list", par_n_list, "comma-separated truncation list")
      ->capture_default_str();
  c_par->add_option("--tol", par_tol, "max deficit as a fraction of energy")
      ->capture_default_str();
  c_par->add_option("--out", out, "output path (default stdout)");
  c_par->callback([&] {
    rc = cmd_parseval(p, q, flavor, par_j_range, par_spectrum, seed, par_seeded, par_pieces,
                      par_n_list, par_tol, out);
  });

  auto* c_rt = app.add_subcommand("roundtrip", "synthesize then re-analyze random sets");
  std::string rt_j_range = "-1:1", rt_n_range = "-10:10";
  double rt_tol = 1e-9;
  int rt_count = 100, rt_atoms = 200;
  add_pq(c_rt);
  c_rt->add_option("--flavor", flavor, "new or auscher")->capture_default_str();
  c_rt->add_option("--seed", seed, "seed")->required();
  c_rt->add_option("--count", rt_count, "number of sets")->capture_default_str();
  c_rt->add_option("--atoms", rt_atoms, "atoms per set")->capture_default_str();
  c_rt->add_option("--j-range", rt_j_range, "a:b inclusive")->capture_default_str();
  c_rt->add_option("--n-range", rt_n_range, "a:b inclusive")->capture_default_str();
  c_rt->add_option("--tol", rt_tol, "max recovery error")->capture_default_str();
  c_rt->add_option("--out", out, "output path (default stdout)");
  c_rt->callback([&] {
    rc = cmd_roundtrip(p, q, flavor, seed, rt_count, rt_atoms, rt_j_range, rt_n_range, rt_tol,
                       out);
  });

  auto* c_bp = app.add_subcommand("bandpass", "truncated reconstruction convergence");
  std::string bp_n_list = "256,512,1024,2048,4096", bp_grid = "-40:40:0.3125";
  double bp_tol = 0.05;
  int bp_pieces = 2;
  add_pq(c_bp);
  c_bp->add_option("--j", j, "scale");
  c_bp->add_option("--m", m, "subband");
  c_bp->add_option("--seed", seed, "in-band test spectrum seed")->required();
  c_bp->add_option("--pieces", bp_pieces, "spectrum pieces")->capture_default_str();
  c_bp->add_option("--N-list", bp_n_list, "truncation list")->capture_default_str();
  c_bp->add_option("--grid", bp_grid, "evaluation grid lo:hi:step")->capture_default_str();
  c_bp->add_option("--tol", bp_tol, "max final relative L2 error")->capture_default_str();
  c_bp->add_option("--out", out, "output path (default stdout)");
  c_bp->callback(
      [&] { rc = cmd_bandpass(p, q, j, m, seed, bp_pieces, bp_n_list, bp_grid, bp_tol, out); });

  auto* c_or = app.add_subcommand("oracle", "closed forms vs quadrature");
  std::string or_op = "ip";
  double or_tol = -1.0;
  int or_count = 50;
  add_pq(c_or);
  c_or->add_option("--flavor", flavor, "new or auscher")->capture_default_str();
  c_or->add_option("--op", or_op, "ip or ift")->capture_default_str();
  c_or->add_option("--seed", seed, "seed")->required();
  c_or->add_option("--count", or_count, "comparisons")->capture_default_str();
  c_or->add_option("--m", m, "subband for --op ift");
  c_or->add_option("--tol", or_tol, "agreement tolerance (default 1e-8 ip, 1e-6 ift)");
  c_or->add_option("--out", out, "output path (default stdout)");
  c_or->callback([&] { rc = cmd_oracle(p, q, flavor, or_op, seed, or_count, m, or_tol, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
