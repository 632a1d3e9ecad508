#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "diracfam/char_classes.hpp"
#include "diracfam/clifford.hpp"
#include "diracfam/family_index.hpp"
#include "support.hpp"

using namespace diracfam;

namespace {

// Independent oracle: degree of the Bloch map h: T^2 -> S^2, midpoint rule.
double bloch_degree(double m0, int res) {
  const double pi = std::numbers::pi;
  double total = 0;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      double c1 = 2 * pi * (i + 0.5) / res, c2 = 2 * pi * (j + 0.5) / res;
      double h[3] = {std::sin(c1), std::sin(c2), m0 + std::cos(c1) + std::cos(c2)};
      double d1[3] = {std::cos(c1), 0, -std::sin(c1)};
      double d2[3] = {0, std::cos(c2), -std::sin(c2)};
      double r = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
      double cross[3] = {d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
                         d1[0] * d2[1] - d1[1] * d2[0]};
      double triple = h[0] * cross[0] + h[1] * cross[1] + h[2] * cross[2];
      total += triple / (r * r * r) * (2 * pi / res) * (2 * pi / res);
    }
  }
  return total / (4 * pi);
}

JumpPoint origin_jump() {
  return {{Rational(0), Rational(0)}, {{0, 0}}};
}

}  // namespace

TEST_CASE("kernel jump loci enumerate the origin only") {
  for (int K : {1, 3, 5}) {
    auto loci = kernel_jump_loci(2, K);
    REQUIRE(loci.size() == 1);
    REQUIRE(loci.front().location == std::vector<Rational>{Rational(0), Rational(0)});
    REQUIRE(loci.front().modes == std::vector<std::vector<long long>>{{0, 0}});
  }
  auto loci4 = kernel_jump_loci(4, 2);
  REQUIRE(loci4.size() == 1);
  REQUIRE(loci4.front().location == std::vector<Rational>(4, Rational(0)));
  REQUIRE(loci4.front().modes == std::vector<std::vector<long long>>{{0, 0, 0, 0}});

  REQUIRE_THROWS_AS(kernel_jump_loci(3, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(kernel_jump_loci(2, 0), std::invalid_argument);
}

TEST_CASE("chiral symbol matches the exact generator block") {
  auto rep = build_clifford(2);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto v = testsupport::random_rational_vector(rng, 2);
    auto m = dirac_symbol(rep, v);
    auto exact = m(1, 0).to_complex_double();
    auto probe = chiral_symbol2(to_double(v[0]), to_double(v[1]));
    REQUIRE(std::abs(exact - probe) < 1e-12);
  }
}

TEST_CASE("local winding degree at the origin jump") {
  for (double r : {0.05, 0.1, 0.2})
    for (int m : {64, 128, 256})
      REQUIRE(local_winding_degree(origin_jump(), r, m) == 1);
}

TEST_CASE("local winding degree away from jumps and on multi-mode blocks") {
  JumpPoint off = {{Rational(1, 4), Rational(1, 4)}, {{0, 0}}};
  REQUIRE(local_winding_degree(off, 0.1, 64) == 0);

  // a doubled jumping block winds twice: determinant multiplies
  JumpPoint doubled = {{Rational(0), Rational(0)}, {{0, 0}, {0, 0}}};
  REQUIRE(local_winding_degree(doubled, 0.1, 128) == 2);
}

TEST_CASE("local winding degree validation") {
  REQUIRE_THROWS_AS(local_winding_degree(origin_jump(), -0.1, 64), std::invalid_argument);
  REQUIRE_THROWS_AS(local_winding_degree(origin_jump(), 0.1, 4), std::invalid_argument);
  JumpPoint empty = {{Rational(0), Rational(0)}, {}};
  REQUIRE_THROWS_AS(local_winding_degree(empty, 0.1, 64), std::invalid_argument);
  JumpPoint wrong_dim = {{Rational(0)}, {{0}}};
  REQUIRE_THROWS_AS(local_winding_degree(wrong_dim, 0.1, 64), std::invalid_argument);

  // the loop around this center passes through the symbol zero at the origin
  JumpPoint grazing = {{Rational(0), Rational(1, 10)}, {{0, 0}}};
  REQUIRE_THROWS_AS(local_winding_degree(grazing, 0.1, 64), std::runtime_error);
}

TEST_CASE("family index report totals one and matches the symbolic magnitude") {
  auto rep = family_index_report(2, 3, 0.1, 64);
  REQUIRE(rep.jump_points.size() == 1);
  REQUIRE(rep.local_degrees == std::vector<long long>{1});
  REQUIRE(rep.total_c1 == 1);

  auto symbolic = family_ch_torus(2);
  const auto& alg = symbolic.element.algebra();
  auto coeff = symbolic.element.terms().begin()->second;
  REQUIRE(symbolic.element == -(alg.y(1) * alg.y(2)));
  REQUIRE(abs_of(coeff) == Rational(std::llabs(rep.total_c1)));
}

TEST_CASE("w-construction with the zero-mode W") {
  auto w = build_w_construction(2, 2, 8, {{0, 0}});
  REQUIRE(w.fibers.size() == 64);
  REQUIRE(w.fiber_dimension == 1);
  for (std::size_t p = 0; p < w.fibers.size(); ++p) {
    REQUIRE(w.certificates[p] >= 1e-8);
    const auto& f = w.fibers[p];
    REQUIRE(f.cols() == 1);
    REQUIRE(std::abs(f.col(0).norm() - 1.0) < 1e-12);
    // the fiber is exactly the k=0 mode line: constant bundle over the chart
    REQUIRE(std::abs(std::abs(f(detail::mode_offset2(0, 0, 2), 0)) - 1.0) < 1e-12);
  }
}

TEST_CASE("w-construction with empty W") {
  auto w = build_w_construction(2, 2, 8, {}, /*offset_grid=*/true);
  REQUIRE(w.fiber_dimension == 0);
  for (const auto& f : w.fibers) REQUIRE(f.cols() == 0);

  // a grid containing the jump point cannot pass the certificate without W
  REQUIRE_THROWS_AS(build_w_construction(2, 2, 8, {}), std::runtime_error);
}

TEST_CASE("w-construction independence and rank consistency") {
  auto small = build_w_construction(2, 2, 6, {{0, 0}}, true);
  auto large = build_w_construction(2, 2, 6, {{0, 0}, {1, 0}}, true);
  REQUIRE(large.fiber_dimension - small.fiber_dimension == 1);
  for (std::size_t p = 0; p < small.fibers.size(); ++p)
    REQUIRE(large.fibers[p].cols() - small.fibers[p].cols() == 1);

  // rank part of the family index equals the single-operator chiral index
  auto report = chiral_index(2, TwistParameter({Rational(1, 4), Rational(1, 4)}), 2);
  REQUIRE(static_cast<long long>(small.fiber_dimension) -
              static_cast<long long>(small.w_modes.size()) ==
          report.index());
}

TEST_CASE("w-construction validation") {
  REQUIRE_THROWS_AS(build_w_construction(4, 2, 4, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(build_w_construction(2, 0, 4, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(build_w_construction(2, 2, 0, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(build_w_construction(2, 2, 4, {{3, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(build_w_construction(2, 2, 4, {{0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("fhs chern number on constant frames") {
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Zero(3, 1);
  frame(0, 0) = 1.0;
  std::vector<std::vector<Eigen::MatrixXcd>> grid(16,
                                                  std::vector<Eigen::MatrixXcd>(16, frame));
  REQUIRE(fhs_chern_number(grid) == 0);
}

TEST_CASE("fhs chern number on the two-band family") {
  REQUIRE(fhs_chern_number(two_band_lower_frames(-1.0, 24)) == -1);
  REQUIRE(fhs_chern_number(two_band_lower_frames(-3.0, 24)) == 0);
  REQUIRE(fhs_chern_number(two_band_lower_frames(1.0, 24)) == 1);
  // refinement stability
  REQUIRE(fhs_chern_number(two_band_lower_frames(-1.0, 32)) == -1);
  REQUIRE(fhs_chern_number(two_band_lower_frames(-1.0, 48)) == -1);
}

TEST_CASE("fhs chern number agrees with the sphere-map degree oracle") {
  // lower band carries minus the degree of the Bloch vector
  for (double m0 : {-1.0, -3.0, 1.0}) {
    double deg = bloch_degree(m0, 128);
    long long deg_rounded = std::llround(deg);
    REQUIRE(std::abs(deg - static_cast<double>(deg_rounded)) < 1e-6);
    REQUIRE(fhs_chern_number(two_band_lower_frames(m0, 24)) == -deg_rounded);
  }
}

TEST_CASE("fhs chern number is gauge invariant") {
  auto frames = two_band_lower_frames(-1.0, 24);
  long long base = fhs_chern_number(frames);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  for (auto& row : frames)
    for (auto& f : row) f *= std::polar(1.0, phase(rng));
  REQUIRE(fhs_chern_number(frames) == base);
}

TEST_CASE("fhs chern number of the w-construction fibers is zero") {
  // over the fundamental-domain chart the fibers form a constant bundle; the
  // index topology lives in the boundary identifications, not in this chart
  auto w = build_w_construction(2, 1, 8, {{0, 0}});
  std::vector<std::vector<Eigen::MatrixXcd>> grid(8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) grid[i].push_back(w.fibers[i * 8 + j]);
  REQUIRE(fhs_chern_number(grid) == 0);
}

TEST_CASE("fhs chern number validation") {
  Eigen::MatrixXcd e1 = Eigen::MatrixXcd::Zero(2, 1), e2 = Eigen::MatrixXcd::Zero(2, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  std::vector<std::vector<Eigen::MatrixXcd>> tiny(1, std::vector<Eigen::MatrixXcd>(4, e1));
  REQUIRE_THROWS_AS(fhs_chern_number(tiny), std::invalid_argument);
  std::vector<std::vector<Eigen::MatrixXcd>> ragged = {{e1, e1}, {e1}};
  REQUIRE_THROWS_AS(fhs_chern_number(ragged), std::invalid_argument);
  std::vector<std::vector<Eigen::MatrixXcd>> orthogonal = {{e1, e2}, {e2, e1}};
  REQUIRE_THROWS_AS(fhs_chern_number(orthogonal), std::runtime_error);
}

TEST_CASE("two-band hamiltonian structure") {
  auto h = two_band_hamiltonian(-1.0, 0.3, 1.2);
  REQUIRE((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  REQUIRE(std::abs(h(0, 0).real() - (-1.0 + std::cos(0.3) + std::cos(1.2))) < 1e-15);
  REQUIRE(std::abs(h(1, 0) - std::complex<double>(std::sin(0.3), std::sin(1.2))) < 1e-15);

  // m0 = -2 closes the gap at the origin of the angle grid
  REQUIRE_THROWS_AS(two_band_lower_frames(-2.0, 24), std::runtime_error);
  REQUIRE_THROWS_AS(two_band_lower_frames(-1.0, 1), std::invalid_argument);
}
