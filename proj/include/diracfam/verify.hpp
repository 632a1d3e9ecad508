#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diracfam/bar_homology.hpp"
#include "diracfam/char_classes.hpp"
#include "diracfam/clifford.hpp"
#include "diracfam/family_index.hpp"
#include "diracfam/spectral_flow.hpp"
#include "diracfam/torus_dirac.hpp"

namespace diracfam {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct SuiteOptions {
  int max_dim = 8;           // clifford: generator relations up to this dimension
  int dim = 2;               // gromov-lawson: even torus dimension
  int cutoff = 10;           // index-t2: truncation K
  int grid = 32;             // family-index: W-construction resolution
  double radius = 0.1;       // family-index: base loop radius (stability set is fixed)
  int samples = 64;          // family-index: base loop sample count
  unsigned seed = 20240815;  // randomized checks; fixed so output is reproducible
};

inline std::vector<std::string> suite_names() {
  return {"clifford",    "lichnerowicz", "circle-spectrum", "index-t2",       "spectral-flow",
          "winding",     "family-index", "chern-formulas",  "gromov-lawson",  "bar-t3"};
}

namespace detail {

inline void add_check(SuiteReport& r, std::string name, bool passed, std::string detail) {
  r.checks.push_back({std::move(name), passed, std::move(detail)});
}

inline std::vector<Rational> random_twist_coords(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> den(1, 6);
  std::vector<Rational> v(n);
  for (auto& x : v) x = Rational(num(rng), den(rng));
  return v;
}

inline SuiteReport suite_clifford(const SuiteOptions& opt) {
  SuiteReport r{"clifford", {}};
  int top = std::min(opt.max_dim, kMaxCliffordDim);
  if (top < 1) throw std::invalid_argument("verify clifford: max dimension must be >= 1");
  for (int n = 1; n <= top; ++n) {
    auto rep = build_clifford(n);
    auto check = check_clifford(rep);
    std::ostringstream d;
    d << "n=" << n << " rank=" << rep.N << " squares/anticommute/skew-hermitian/grading exact";
    add_check(r, "relations n=" + std::to_string(n), check.all(), d.str());
  }

  const ComplexRational z(0), one(1), i = ComplexRational::i();
  bool tables = true;
  if (top >= 1) tables = tables && build_clifford(1).generators[0] == ComplexRationalMatrix{{i}};
  if (top >= 2) {
    auto rep = build_clifford(2);
    tables = tables && rep.generators[0] == ComplexRationalMatrix{{z, -one}, {one, z}} &&
             rep.generators[1] == ComplexRationalMatrix{{z, i}, {i, z}} &&
             rep.chirality.has_value() &&
             *rep.chirality == ComplexRationalMatrix{{one, z}, {z, -one}};
  }
  if (top >= 3) {
    auto rep = build_clifford(3);
    tables = tables && rep.generators[0] == ComplexRationalMatrix{{i, z}, {z, -i}} &&
             rep.generators[1] == ComplexRationalMatrix{{z, -one}, {one, z}} &&
             rep.generators[2] == ComplexRationalMatrix{{z, i}, {i, z}};
  }
  if (top >= 4) {
    auto rep = build_clifford(4);
    tables = tables &&
             rep.generators[0] == ComplexRationalMatrix{{z, z, -one, z},
                                                        {z, z, z, -one},
                                                        {one, z, z, z},
                                                        {z, one, z, z}} &&
             rep.generators[1] == ComplexRationalMatrix{
                                      {z, z, i, z}, {z, z, z, -i}, {i, z, z, z}, {z, -i, z, z}} &&
             rep.generators[2] == ComplexRationalMatrix{{z, z, z, -one},
                                                        {z, z, one, z},
                                                        {z, -one, z, z},
                                                        {one, z, z, z}} &&
             rep.generators[3] == ComplexRationalMatrix{
                                      {z, z, z, i}, {z, z, i, z}, {z, i, z, z}, {i, z, z, z}} &&
             rep.chirality.has_value() &&
             *rep.chirality == ComplexRationalMatrix{{one, z, z, z},
                                                     {z, one, z, z},
                                                     {z, z, -one, z},
                                                     {z, z, z, -one}};
  }
  add_check(r, "reference tables n<=4", tables, "generators match the tabulated matrices exactly");
  return r;
}

inline SuiteReport suite_lichnerowicz(const SuiteOptions& opt) {
  SuiteReport r{"lichnerowicz", {}};
  std::mt19937 rng(opt.seed);
  const int caps[5] = {0, 5, 5, 4, 3};  // K per dimension, keeps the sweep under budget
  for (int n = 1; n <= 4; ++n) {
    int K = caps[n];
    bool ok = true;
    for (int trial = 0; trial < 25 && ok; ++trial) {
      TwistParameter c(random_twist_coords(rng, n));
      ok = verify_lichnerowicz(n, c, K) == 0;
    }
    std::ostringstream d;
    d << "n=" << n << " K=" << K << " 25 random rational twists, deviation exactly 0";
    add_check(r, "square identity n=" + std::to_string(n), ok, d.str());
  }
  return r;
}

inline SuiteReport suite_circle_spectrum(const SuiteOptions&) {
  SuiteReport r{"circle-spectrum", {}};
  const std::vector<Rational> twists = {Rational(0), Rational(1, 4), Rational(-1, 2),
                                        Rational(7, 3)};
  for (const auto& c : twists) {
    bool ok = true;
    for (int K : {2, 5}) {
      auto slice = spectrum(1, TwistParameter({c}), K);
      if (slice.entries.size() != static_cast<std::size_t>(2 * K + 1)) ok = false;
      std::size_t idx = 0;
      for (long long m = -K; m <= K && ok; ++m, ++idx) {
        Rational v = Rational(m) + c;
        const auto& e = slice.entries[idx];
        ok = e.sign == sign_of(v) && e.square == v * v && e.multiplicity == 1;
      }
    }
    add_check(r, "eigenvalues m + c at c=" + format_rational(c), ok,
              "exact match, multiplicity 1, K in {2,5}");
  }

  bool conj = spectra_conjugacy_check(1, TwistParameter({Rational(1, 4)}),
                                      TwistParameter({Rational(5, 4)}), 6) &&
              spectra_conjugacy_check(1, TwistParameter({Rational(-1, 2)}),
                                      TwistParameter({Rational(3, 2)}), 6) &&
              !spectra_conjugacy_check(1, TwistParameter({Rational(1, 4)}),
                                       TwistParameter({Rational(1, 3)}), 6);
  add_check(r, "conjugacy iff integral shift", conj,
            "1/4 ~ 5/4, -1/2 ~ 3/2, 1/4 !~ 1/3 at K=6");
  return r;
}

inline SuiteReport suite_index_t2(const SuiteOptions& opt) {
  SuiteReport r{"index-t2", {}};
  const int K = opt.cutoff;
  const TwistParameter zero({Rational(0), Rational(0)});
  const std::vector<TwistParameter> nonzero = {
      TwistParameter({Rational(1, 2), Rational(0)}),
      TwistParameter({Rational(0), Rational(1, 2)}),
      TwistParameter({Rational(1, 2), Rational(1, 2)}),
      TwistParameter({Rational(1, 4), Rational(-1, 3)}),
      TwistParameter({Rational(-2, 5), Rational(1, 10)})};

  add_check(r, "harmonic dimension at c=0", harmonic_spinor_dimension(2, zero) == 2,
            "dim ker D = 2, exact");
  bool elsewhere = true;
  for (const auto& c : nonzero) elsewhere = elsewhere && harmonic_spinor_dimension(2, c) == 0;
  add_check(r, "no harmonic spinors off c=0", elsewhere, "5 fundamental-domain twists, exact");

  bool index_zero = chiral_index(2, zero, K).index() == 0;
  for (const auto& c : nonzero) index_zero = index_zero && chiral_index(2, c, K).index() == 0;
  std::ostringstream d;
  d << "dim ker D+ - dim ker D- = 0 at K=" << K << " for all sampled twists";
  add_check(r, "chiral index vanishes", index_zero, d.str());
  return r;
}

inline SuiteReport suite_spectral_flow(const SuiteOptions& opt) {
  SuiteReport r{"spectral-flow", {}};
  add_check(r, "circle loop 0 -> 1",
            exact_flow(1, ParamPath({{Rational(0)}, {Rational(1)}}, true), 2) == 1,
            "exact flow 1");

  bool truncations = true;
  for (int K : {5, 10, 20}) {
    HermitianFamily f;
    for (int s = 0; s < 9; ++s) {
      double t = s / 8.0;
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * K + 1, 2 * K + 1);
      for (int j = 0; j <= 2 * K; ++j) m(j, j) = (j - K) + 0.25 + t;
      f.times.push_back(t);
      f.matrices.push_back(m);
    }
    long long exact =
        exact_flow(1, ParamPath({{Rational(1, 4)}, {Rational(5, 4)}}, true), K);
    truncations = truncations && numeric_flow(f) == exact && exact == 1;
  }
  add_check(r, "numeric truncations K in {5,10,20}", truncations,
            "gauge-shifted representative 1/4 -> 5/4, numeric = exact = 1");

  bool loops3 = true;
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<Rational> a(3, Rational(0)), b(3, Rational(0));
    b[axis] = Rational(1);
    loops3 = loops3 && exact_flow(3, ParamPath({a, b}, true), 2) == 0;
  }
  add_check(r, "T^3 coordinate loops", loops3, "exact flow 0 on all three generators");

  std::mt19937 rng(opt.seed);
  bool additive = true;
  for (int trial = 0; trial < 50 && additive; ++trial) {
    auto a = random_twist_coords(rng, 1);
    auto b = random_twist_coords(rng, 1);
    auto c = random_twist_coords(rng, 1);
    additive = exact_flow(1, ParamPath({a, b, c}, false), 10) ==
               exact_flow(1, ParamPath({a, b}, false), 10) +
                   exact_flow(1, ParamPath({b, c}, false), 10);
  }
  add_check(r, "concatenation additivity", additive, "50 random circle paths at K=10");
  return r;
}

inline SuiteReport suite_winding(const SuiteOptions& opt) {
  SuiteReport r{"winding", {}};
  auto diag_loop = [](int samples, const std::vector<int>& turns) {
    std::vector<Eigen::MatrixXcd> loop;
    for (int s = 0; s < samples; ++s) {
      double theta = 2 * std::numbers::pi * s / samples;
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(turns.size(), turns.size());
      for (std::size_t j = 0; j < turns.size(); ++j) u(j, j) = std::polar(1.0, turns[j] * theta);
      loop.push_back(u);
    }
    return loop;
  };

  add_check(r, "single rotating phase", unitary_winding(diag_loop(64, {1, 0, 0})) == 1,
            "diag(e^{i theta}, 1, 1) -> 1");
  add_check(r, "opposite phases cancel", unitary_winding(diag_loop(64, {1, -1})) == 0,
            "diag(e^{i theta}, e^{-i theta}) -> 0");

  std::mt19937 rng(opt.seed);
  std::uniform_int_distribution<int> turn(-3, 3);
  std::uniform_int_distribution<int> dim(1, 3);
  bool additive = true;
  for (int trial = 0; trial < 10 && additive; ++trial) {
    std::vector<int> ta(dim(rng)), tb(dim(rng));
    for (auto& t : ta) t = turn(rng);
    for (auto& t : tb) t = turn(rng);
    auto a = diag_loop(96, ta), b = diag_loop(96, tb);
    std::vector<int> tc = ta;
    tc.insert(tc.end(), tb.begin(), tb.end());
    auto c = diag_loop(96, tc);
    additive = unitary_winding(c) == unitary_winding(a) + unitary_winding(b);
  }
  add_check(r, "block-sum additivity", additive, "10 random diagonal pairs, 96 samples");
  return r;
}

inline SuiteReport suite_family_index(const SuiteOptions& opt) {
  SuiteReport r{"family-index", {}};
  auto loci = kernel_jump_loci(2, 3);
  bool jump_ok = loci.size() == 1 &&
                 loci.front().location == std::vector<Rational>{Rational(0), Rational(0)} &&
                 loci.front().modes == std::vector<std::vector<long long>>{{0, 0}};
  add_check(r, "kernel jump loci", jump_ok, "unique jump at the origin, mode k=0");

  long long base_total = family_index_report(2, 3, opt.radius, opt.samples).total_c1;
  bool stable = true;
  for (double rad : {0.05, 0.1, 0.2})
    for (int m : {64, 128, 256})
      stable = stable && family_index_report(2, 3, rad, m).total_c1 == base_total;
  std::ostringstream d;
  d << "total c1 = " << base_total << " for r in {0.05,0.1,0.2}, samples in {64,128,256}";
  add_check(r, "winding total stable", stable && std::llabs(base_total) == 1, d.str());

  auto symbolic = family_ch_torus(2);
  bool magnitude = symbolic.element.terms().size() == 1 &&
                   abs_of(symbolic.element.terms().begin()->second) ==
                       Rational(std::llabs(base_total));
  add_check(r, "symbolic magnitude agreement", magnitude,
            "|ch(ind) coefficient| = |total c1| = 1");

  auto w = build_w_construction(2, 3, opt.grid, {{0, 0}});
  bool w_ok = w.fiber_dimension == 1;
  double min_cert = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < w.fibers.size(); ++p) {
    w_ok = w_ok && w.fibers[p].cols() == 1;
    min_cert = std::min(min_cert, w.certificates[p]);
  }
  std::ostringstream wd;
  wd << "grid " << opt.grid << "^2, constant fiber dimension 1, min certificate " << min_cert;
  add_check(r, "w-construction certificate", w_ok && min_cert >= 1e-8, wd.str());

  bool fhs = fhs_chern_number(two_band_lower_frames(-1.0, 24)) == -1 &&
             fhs_chern_number(two_band_lower_frames(-3.0, 24)) == 0;
  auto frames = two_band_lower_frames(-1.0, 24);
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  for (auto& row : frames)
    for (auto& f : row) f *= std::polar(1.0, phase(rng));
  fhs = fhs && fhs_chern_number(frames) == -1;
  add_check(r, "two-band oracle", fhs,
            "C(m0=-1) = -1, C(m0=-3) = 0 at grid 24^2, gauge invariant");
  return r;
}

inline SuiteReport suite_chern_formulas(const SuiteOptions&) {
  SuiteReport r{"chern-formulas", {}};
  add_check(r, "series through dimension 4", a_hat_formal(4).to_string() == "1 - 1/24*p1",
            "exact coefficients");
  add_check(r, "series through dimension 8",
            a_hat_formal(8).to_string() == "1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2",
            "exact coefficients");

  auto k3 = index_from_pontryagin(4, {.p1 = Rational(-48), .p1_sq = 0, .p2 = 0});
  add_check(r, "signature -16 four-manifold", k3.value == 2 && k3.integral,
            "index -p1/24 = 2, integral");

  bool family = true;
  for (int n : {2, 4, 6}) {
    auto rep = family_ch_torus(n);
    family = family && rep.element.terms().size() == 1 &&
             abs_of(rep.element.terms().begin()->second) == 1;
  }
  add_check(r, "family index class on even tori", family,
            "single monomial, coefficient +-1, n in {2,4,6}");

  CupForm t3(3);
  t3.set(1, 2, 3, 1);
  auto odd = odd_family_ch(3, t3);
  auto alg = odd.algebra();
  bool odd_ok = odd.degree_component(1).terms().empty() &&
                odd.degree_component(3) == alg.y(1) * alg.y(2) * alg.y(3);
  CupForm two(6);
  two.set(1, 2, 3, 1);
  two.set(4, 5, 6, -2);
  auto odd2 = odd_family_ch(6, two);
  auto alg2 = odd2.algebra();
  odd_ok = odd_ok && odd2.degree_component(1).terms().empty() &&
           odd2.degree_component(3) ==
               alg2.y(1) * alg2.y(2) * alg2.y(3) +
                   Rational(-2) * (alg2.y(4) * alg2.y(5) * alg2.y(6));
  add_check(r, "odd family class", odd_ok, "degree-1 part 0, degree-3 part reproduces the cup form");
  return r;
}

inline SuiteReport suite_gromov_lawson(const SuiteOptions& opt) {
  SuiteReport r{"gromov-lawson", {}};
  const int n = opt.dim;
  if (n < 2 || n % 2 != 0 || n > 6)
    throw std::invalid_argument("verify gromov-lawson: dimension must be 2, 4, or 6");

  auto symbolic = family_ch_torus(n);
  bool nonzero = symbolic.element.terms().size() == 1 &&
                 abs_of(symbolic.element.terms().begin()->second) == 1;
  add_check(r, "symbolic obstruction", nonzero,
            "ch(ind) = " + symbolic.element.to_string() + " != 0");

  TwistParameter zero(std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> off_coords(n, Rational(0));
  off_coords[0] = Rational(1, 8);
  TwistParameter off(off_coords);
  bool jump = harmonic_spinor_dimension(n, zero) == spinor_rank(n) &&
              harmonic_spinor_dimension(n, off) == 0;
  std::ostringstream d;
  d << "dim ker D = " << spinor_rank(n) << " at c=0, 0 at c=(1/8,0,...)";
  add_check(r, "kernel jump at c=0", jump, d.str());

  auto loci = kernel_jump_loci(n, 2);
  add_check(r, "obstruction localized", loci.size() == 1 && loci.front().modes.size() == 1,
            "every invertibility failure sits at the single jump point");
  return r;
}

inline SuiteReport suite_bar_t3(const SuiteOptions& opt) {
  SuiteReport r{"bar-t3", {}};
  CupForm t3(3);
  t3.set(1, 2, 3, 1);
  auto ranks = bar_ranks(t3);
  bool t3_ok = ranks.even == 3 && ranks.odd == 3 &&
               ranks.survivors == std::vector<long long>{0, 3, 3, 0};
  add_check(r, "volume form ranks", t3_ok, "b=3, zeta_123=1 -> ranks (3,3), survivors 0,3,3,0");

  auto nv = nonvanishing_check(t3);
  add_check(r, "nonvanishing witnesses", nv.nonvanishing && nv.witness_degrees.size() == 2,
            "surviving classes in degrees 1 and 2");

  bool zero_ok = true;
  for (int b = 1; b <= 5; ++b) {
    auto zr = bar_ranks(CupForm(b));
    long long expect = 1LL << (b - 1);
    zero_ok = zero_ok && zr.even == expect && zr.odd == expect;
  }
  add_check(r, "zero form ranks", zero_ok, "b=1..5 -> (2^{b-1}, 2^{b-1})");

  std::mt19937 rng(opt.seed);
  bool invariant = true;
  CupForm base(4);
  base.set(1, 2, 3, 1);
  base.set(1, 2, 4, -1);
  auto base_ranks = bar_ranks(base);
  for (int trial = 0; trial < 5 && invariant; ++trial) {
    auto g = random_unimodular(4, rng);
    invariant = bar_ranks(transform_basis(base, g)) == base_ranks;
  }
  add_check(r, "unimodular invariance", invariant, "5 random basis changes at b=4");
  return r;
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  if (name == "clifford") return detail::suite_clifford(opt);
  if (name == "lichnerowicz") return detail::suite_lichnerowicz(opt);
  if (name == "circle-spectrum") return detail::suite_circle_spectrum(opt);
  if (name == "index-t2") return detail::suite_index_t2(opt);
  if (name == "spectral-flow") return detail::suite_spectral_flow(opt);
  if (name == "winding") return detail::suite_winding(opt);
  if (name == "family-index") return detail::suite_family_index(opt);
  if (name == "chern-formulas") return detail::suite_chern_formulas(opt);
  if (name == "gromov-lawson") return detail::suite_gromov_lawson(opt);
  if (name == "bar-t3") return detail::suite_bar_t3(opt);
  throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace diracfam
