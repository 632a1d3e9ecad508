#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "diracfam/char_classes.hpp"

using namespace diracfam;

namespace {

// Independent sign oracle: wedge of two sorted generator-index sequences via
// bubble sort of the concatenation; 0 on repeats.
int permutation_sign_oracle(std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j + 1 < seq.size() - i; ++j) {
      if (seq[j] == seq[j + 1]) return 0;
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        sign = -sign;
      }
    }
  return sign;
}

ExteriorElement monomial_from_positions(const ExteriorAlgebra& alg,
                                        const std::vector<int>& positions) {
  ExteriorElement e = alg.one();
  for (int p : positions)
    e = e * (p < alg.x_count() ? alg.x(p + 1) : alg.y(p - alg.x_count() + 1));
  return e;
}

}  // namespace

TEST_CASE("wedge basics") {
  ExteriorAlgebra alg(2, 2);
  auto x1 = alg.x(1), x2 = alg.x(2), y1 = alg.y(1), y2 = alg.y(2);

  CHECK((x1 * x1).is_zero());
  CHECK(x1 * y1 == monomial_from_positions(alg, {0, 2}));
  CHECK(y1 * x1 == -(x1 * y1));
  CHECK((x1 * y1) * (x2 * y2) == -(x1 * x2 * y1 * y2));

  CHECK((alg.one() * x1) == x1);
  CHECK((Rational(3) * x1 + Rational(-3) * x1).is_zero());
}

TEST_CASE("wedge signs match the permutation oracle") {
  ExteriorAlgebra alg(3, 3);
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> pos(0, 5);
  for (int trial = 0; trial < 300; ++trial) {
    int la = 1 + rng() % 3, lb = 1 + rng() % 3;
    std::vector<int> a, b;
    for (int i = 0; i < la; ++i) a.push_back(pos(rng));
    for (int i = 0; i < lb; ++i) b.push_back(pos(rng));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) continue;
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) continue;

    auto ea = monomial_from_positions(alg, a);
    auto eb = monomial_from_positions(alg, b);
    std::vector<int> concat = a;
    concat.insert(concat.end(), b.begin(), b.end());
    int sign = permutation_sign_oracle(concat);

    std::vector<int> merged = concat;
    std::sort(merged.begin(), merged.end());
    if (sign == 0) {
      CHECK((ea * eb).is_zero());
    } else {
      CHECK(ea * eb == Rational(sign) * monomial_from_positions(alg, merged));
    }
  }
}

TEST_CASE("wedge is associative and graded commutative") {
  ExteriorAlgebra alg(2, 2);
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> coeff(-3, 3);

  auto random_homogeneous = [&](int degree) {
    ExteriorElement e = alg.zero();
    std::vector<std::vector<int>> picks;
    for (int mask = 0; mask < 16; ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != degree) continue;
      std::vector<int> p;
      for (int b = 0; b < 4; ++b)
        if (mask & (1 << b)) p.push_back(b);
      picks.push_back(p);
    }
    for (const auto& p : picks)
      e = e + Rational(coeff(rng)) * monomial_from_positions(alg, p);
    return e;
  };

  for (int trial = 0; trial < 30; ++trial) {
    int da = 1 + rng() % 2, db = 1 + rng() % 2, dc = 1 + rng() % 2;
    auto a = random_homogeneous(da);
    auto b = random_homogeneous(db);
    auto c = random_homogeneous(dc);
    CHECK((a * b) * c == a * (b * c));
    Rational sign = (da * db) % 2 == 0 ? 1 : -1;
    CHECK(a * b == sign * (b * a));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("exponential of nilpotents") {
  ExteriorAlgebra alg2 = family_algebra(2);
  CHECK(exp_nilpotent(alg2.zero()) == alg2.one());

  auto om = omega(2);
  auto e = exp_nilpotent(om);
  auto expected = alg2.one() + alg2.x(1) * alg2.y(1) + alg2.x(2) * alg2.y(2) -
                  alg2.x(1) * alg2.x(2) * alg2.y(1) * alg2.y(2);
  CHECK(e == expected);

  CHECK(exp_nilpotent(om) * exp_nilpotent(-om) == alg2.one());
  CHECK_THROWS_AS(exp_nilpotent(alg2.one()), std::invalid_argument);

  // exp(a+b) = exp(a) exp(b) for commuting (even) nilpotents
  ExteriorAlgebra alg4(4, 4);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    ExteriorElement a = alg4.zero(), b = alg4.zero();
    for (int i = 1; i <= 4; ++i) {
      a = a + Rational(coeff(rng)) * (alg4.x(i) * alg4.y(i));
      b = b + Rational(coeff(rng)) * (alg4.x(i) * alg4.y(5 - i));
    }
    CHECK(exp_nilpotent(a + b) == exp_nilpotent(a) * exp_nilpotent(b));
  }
}

TEST_CASE("A-hat series coefficients") {
  CHECK(a_hat_formal(4).to_string() == "1 - 1/24*p1");
  CHECK(a_hat_formal(3).to_string() == "1");
  CHECK(a_hat_formal(8).to_string() == "1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2");

  ExteriorAlgebra formal(0, 0, {{"p1", 4}, {"p2", 8}}, 8);
  auto series = a_hat(8, formal.even("p1"), formal.even("p2"));
  CHECK(series.degree_component(8) ==
        Rational(7, 5760) * formal.even("p1").pow(2) - Rational(1, 1440) * formal.even("p2"));

  // torus: all Pontryagin data zero, any dimension
  for (int n : {2, 4, 8, 12}) {
    ExteriorAlgebra alg(0, 0, {}, 0);
    CHECK(a_hat(n, alg.zero(), alg.zero()) == alg.one());
  }
  ExteriorAlgebra big(0, 0, {{"p1", 4}, {"p2", 8}}, 16);
  CHECK_THROWS_AS(a_hat(12, big.even("p1"), big.zero()), std::invalid_argument);
}

TEST_CASE("slant against the fundamental class") {
  ExteriorAlgebra alg = family_algebra(2);
  auto x_top = alg.x(1) * alg.x(2);
  auto y_pair = alg.y(1) * alg.y(2);

  CHECK(slant_fundamental_class(x_top * y_pair, 2) == y_pair);
  CHECK(slant_fundamental_class(y_pair, 2).is_zero());
  CHECK(slant_fundamental_class(exp_nilpotent(omega(2)), 2) == -y_pair);

  // x-top prefix convention: slant(alpha ^ beta) = beta exactly
  for (int d : {0, 1, 2}) {
    ExteriorElement beta = alg.one();
    for (int i = 1; i <= d; ++i) beta = beta * alg.y(i);
    CHECK(slant_fundamental_class(x_top * beta, 2) == beta);
    Rational swap_sign = (2 * d) % 2 == 0 ? 1 : -1;
    CHECK(slant_fundamental_class(swap_sign * (beta * x_top), 2) == beta);
  }
}

TEST_CASE("family index class over even tori") {
  auto r2 = family_ch_torus(2);
  ExteriorAlgebra alg2 = family_algebra(2);
  CHECK(r2.element == -(alg2.y(1) * alg2.y(2)));
  CHECK(r2.rank_part == 0);
  CHECK(r2.integral);

  auto r4 = family_ch_torus(4);
  ExteriorAlgebra alg4 = family_algebra(4);
  CHECK(r4.element == alg4.y(1) * alg4.y(2) * alg4.y(3) * alg4.y(4));
  CHECK(r4.rank_part == 0);

  auto r6 = family_ch_torus(6);
  REQUIRE(r6.element.terms().size() == 1);
  const auto& [mono, c] = *r6.element.terms().begin();
  CHECK(mono.degree == 6);
  CHECK((c == 1 || c == -1));
  CHECK(c == -1);  // frozen orientation convention: sign (-1)^{n(n-1)/2}

  CHECK_THROWS_AS(family_ch_torus(3), std::invalid_argument);
  CHECK_THROWS_AS(family_ch_torus(0), std::invalid_argument);
}

TEST_CASE("odd family class is the cup form") {
  CupForm t3(3);
  t3.set(1, 2, 3, 1);
  ExteriorAlgebra alg(0, 3);
  CHECK(odd_family_ch(3, t3) == alg.y(1) * alg.y(2) * alg.y(3));

  CHECK(odd_family_ch(3, CupForm(3)).is_zero());

  // linearity
  CupForm a(4), b(4);
  a.set(1, 2, 3, 2);
  b.set(1, 2, 3, -1);
  b.set(2, 3, 4, 5);
  CHECK(odd_family_ch(4, a + b) == odd_family_ch(4, a) + odd_family_ch(4, b));

  // degree-1 component vanishes
  CHECK(odd_family_ch(4, a).degree_component(1).is_zero());
  CHECK(odd_family_ch(4, a).degree_component(3) == odd_family_ch(4, a));

  CHECK_THROWS_AS(odd_family_ch(2, t3), std::invalid_argument);
}

TEST_CASE("index numbers from Pontryagin data") {
  auto k3 = index_from_pontryagin(4, {.p1 = Rational(-48)});
  CHECK(k3.value == 2);
  CHECK(k3.integral);

  auto flat = index_from_pontryagin(4, {.p1 = Rational(0)});
  CHECK(flat.value == 0);
  CHECK(flat.integral);

  auto eight = index_from_pontryagin(8, {.p1_sq = Rational(0), .p2 = Rational(-1440)});
  CHECK(eight.value == 1);
  CHECK(eight.integral);

  CHECK(index_from_pontryagin(2, {.p1 = Rational(99)}).value == 0);
  CHECK(index_from_pontryagin(6, {}).value == 0);

  auto fractional = index_from_pontryagin(4, {.p1 = Rational(-4)});
  CHECK(fractional.value == Rational(1, 6));
  CHECK_FALSE(fractional.integral);

  CHECK_THROWS_AS(index_from_pontryagin(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(index_from_pontryagin(10, {}), std::invalid_argument);
}

TEST_CASE("truncated Chern character") {
  ExteriorAlgebra alg(0, 0, {{"h", 2}, {"e", 4}}, 8);
  auto h = alg.even("h"), e = alg.even("e");

  CHECK(chern_character(Rational(1), alg.zero(), alg.zero()) == alg.one());
  CHECK(chern_character(Rational(1), h, alg.zero()) ==
        alg.one() + h + Rational(1, 2) * h.pow(2));
  CHECK(chern_character(Rational(2), alg.zero(), e) == alg.scalar(Rational(2)) - e);
}

TEST_CASE("element rendering is canonical") {
  ExteriorAlgebra alg = family_algebra(2);
  CHECK(alg.zero().to_string() == "0");
  CHECK(alg.one().to_string() == "1");
  CHECK((-(alg.y(1) * alg.y(2))).to_string() == "-y1*y2");
  CHECK(exp_nilpotent(omega(2)).to_string() == "1 + x1*y1 + x2*y2 - x1*x2*y1*y2");
  CHECK((Rational(-1, 24) * alg.x(1)).to_string() == "-1/24*x1");
}

TEST_CASE("algebra mismatch and range errors") {
  ExteriorAlgebra a(1, 1), b(2, 2);
  CHECK_THROWS_AS(a.x(1) * b.x(1), std::invalid_argument);
  CHECK_THROWS_AS(a.x(2), std::invalid_argument);
  CHECK_THROWS_AS(a.y(0), std::invalid_argument);
  CHECK_THROWS_AS(a.even("p1"), std::invalid_argument);
  CHECK_THROWS_AS(ExteriorAlgebra(17, 0), std::invalid_argument);
  CHECK_THROWS_AS(ExteriorAlgebra(0, 0, {{"p1", 3}}, 8), std::invalid_argument);
  CHECK_THROWS_AS(ExteriorAlgebra(0, 0, {{"p1", 4}}), std::invalid_argument);
}

TEST_CASE("truncation respects the algebra bound") {
  ExteriorAlgebra alg(2, 2, {}, 2);
  auto q = alg.x(1) * alg.y(1);
  CHECK((q * q).is_zero());  // degree 4 > bound
  CHECK(q.truncate_above(1).is_zero());
  CHECK((alg.one() + q).degree_component(0) == alg.one());
}
