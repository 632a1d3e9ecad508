#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diracfam/rational.hpp"

namespace diracfam {

inline constexpr int kMaxOddGenerators = 16;
inline constexpr std::size_t kMaxEvenGenerators = 4;

// Commuting formal symbol of even degree (Pontryagin/Chern class slots).
struct EvenGenerator {
  std::string name;
  int degree = 0;
  friend bool operator==(const EvenGenerator&, const EvenGenerator&) = default;
};

class ExteriorElement;

// Generator set: anticommuting x_1..x_n and y_1..y_m of degree 1, plus up to
// four commuting even symbols. Terms above max_degree are truncated away.
class ExteriorAlgebra {
 public:
  ExteriorAlgebra() = default;
  ExteriorAlgebra(int x_count, int y_count, std::vector<EvenGenerator> even = {},
                  int max_degree = -1)
      : x_count_(x_count), y_count_(y_count), even_(std::move(even)) {
    if (x_count < 0 || x_count > kMaxOddGenerators || y_count < 0 ||
        y_count > kMaxOddGenerators)
      throw std::invalid_argument("ExteriorAlgebra: generator count out of range");
    if (even_.size() > kMaxEvenGenerators)
      throw std::invalid_argument("ExteriorAlgebra: too many even symbols");
    for (const auto& e : even_) {
      if (e.degree <= 0 || e.degree % 2 != 0)
        throw std::invalid_argument("ExteriorAlgebra: even symbol degree must be positive even");
      if (e.name.empty()) throw std::invalid_argument("ExteriorAlgebra: even symbol needs a name");
    }
    if (max_degree < 0) {
      if (!even_.empty())
        throw std::invalid_argument("ExteriorAlgebra: max_degree required with even symbols");
      max_degree_ = x_count_ + y_count_;
    } else {
      max_degree_ = max_degree;
    }
  }

  int x_count() const { return x_count_; }
  int y_count() const { return y_count_; }
  int max_degree() const { return max_degree_; }
  const std::vector<EvenGenerator>& even_symbols() const { return even_; }

  friend bool operator==(const ExteriorAlgebra&, const ExteriorAlgebra&) = default;

  ExteriorElement zero() const;
  ExteriorElement scalar(const Rational& c) const;
  ExteriorElement one() const;
  ExteriorElement x(int i) const;  // 1-based
  ExteriorElement y(int i) const;  // 1-based
  ExteriorElement even(std::string_view name) const;

 private:
  int x_count_ = 0;
  int y_count_ = 0;
  int max_degree_ = 0;
  std::vector<EvenGenerator> even_;
};

// Canonical monomial: x factors (ascending), then y factors, then even powers.
struct Monomial {
  std::uint32_t x_bits = 0;
  std::uint32_t y_bits = 0;
  std::array<std::uint8_t, kMaxEvenGenerators> pows{};
  int degree = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.x_bits != b.x_bits) return a.x_bits < b.x_bits;
    if (a.y_bits != b.y_bits) return a.y_bits < b.y_bits;
    // higher power on an earlier symbol sorts first (p1^2 before p2)
    return b.pows < a.pows;
  }
};

namespace detail {

inline std::uint64_t odd_positions(const Monomial& m, int x_count) {
  return std::uint64_t{m.x_bits} | (std::uint64_t{m.y_bits} << x_count);
}

inline int inversion_parity(std::uint64_t first, std::uint64_t second) {
  int parity = 0;
  std::uint64_t rest = second;
  while (rest) {
    int b = std::countr_zero(rest);
    rest &= rest - 1;
    parity ^= std::popcount(first >> (b + 1)) & 1;
  }
  return parity;
}

}  // namespace detail

class ExteriorElement {
 public:
  ExteriorElement() = default;
  explicit ExteriorElement(ExteriorAlgebra alg) : alg_(std::move(alg)) {}

  const ExteriorAlgebra& algebra() const { return alg_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational scalar_part() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int min_degree() const {
    return terms_.empty() ? std::numeric_limits<int>::max() : terms_.begin()->first.degree;
  }
  int max_degree_present() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree; }

  ExteriorElement degree_component(int d) const {
    ExteriorElement out(alg_);
    for (const auto& [m, c] : terms_)
      if (m.degree == d) out.terms_.emplace(m, c);
    return out;
  }

  ExteriorElement truncate_above(int d) const {
    ExteriorElement out(alg_);
    for (const auto& [m, c] : terms_)
      if (m.degree <= d) out.terms_.emplace(m, c);
    return out;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0 || m.degree > alg_.max_degree()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend ExteriorElement operator+(const ExteriorElement& a, const ExteriorElement& b) {
    a.require_same_algebra(b);
    ExteriorElement out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend ExteriorElement operator-(const ExteriorElement& a, const ExteriorElement& b) {
    a.require_same_algebra(b);
    ExteriorElement out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
  }

  friend ExteriorElement operator-(const ExteriorElement& a) {
    ExteriorElement out(a.alg_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }

  friend ExteriorElement operator*(const Rational& s, const ExteriorElement& a) {
    ExteriorElement out(a.alg_);
    if (s != 0)
      for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
    return out;
  }

  // wedge product
  friend ExteriorElement operator*(const ExteriorElement& a, const ExteriorElement& b) {
    a.require_same_algebra(b);
    const int xc = a.alg_.x_count();
    ExteriorElement out(a.alg_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if ((ma.x_bits & mb.x_bits) || (ma.y_bits & mb.y_bits)) continue;
        int degree = ma.degree + mb.degree;
        if (degree > a.alg_.max_degree()) continue;
        Monomial m;
        m.x_bits = ma.x_bits | mb.x_bits;
        m.y_bits = ma.y_bits | mb.y_bits;
        m.degree = degree;
        bool overflow = false;
        for (std::size_t i = 0; i < kMaxEvenGenerators; ++i) {
          int p = ma.pows[i] + mb.pows[i];
          if (p > 255) {
            overflow = true;
            break;
          }
          m.pows[i] = static_cast<std::uint8_t>(p);
        }
        if (overflow) throw std::runtime_error("ExteriorElement: even exponent overflow");
        int parity = detail::inversion_parity(detail::odd_positions(ma, xc),
                                              detail::odd_positions(mb, xc));
        out.add_term(m, parity ? Rational(-ca * cb) : Rational(ca * cb));
      }
    }
    return out;
  }

  ExteriorElement pow(int k) const {
    if (k < 0) throw std::invalid_argument("ExteriorElement::pow: negative exponent");
    ExteriorElement out = alg_.one();
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) {
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const ExteriorElement& a, const ExteriorElement& b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = abs_of(c);
      std::string mono = render_monomial(m);
      std::string piece;
      if (mono.empty()) {
        piece = format_rational(mag);
      } else if (mag == 1) {
        piece = mono;
      } else {
        piece = format_rational(mag) + "*" + mono;
      }
      if (first) {
        s = (c < 0 ? "-" : "") + piece;
        first = false;
      } else {
        s += (c < 0 ? " - " : " + ") + piece;
      }
    }
    return s;
  }

  std::string render_monomial(const Monomial& m) const {
    std::string s;
    auto append = [&s](const std::string& f) {
      if (!s.empty()) s += "*";
      s += f;
    };
    for (int i = 0; i < alg_.x_count(); ++i)
      if (m.x_bits & (1u << i)) append("x" + std::to_string(i + 1));
    for (int i = 0; i < alg_.y_count(); ++i)
      if (m.y_bits & (1u << i)) append("y" + std::to_string(i + 1));
    for (std::size_t i = 0; i < alg_.even_symbols().size(); ++i) {
      if (m.pows[i] == 0) continue;
      std::string f = alg_.even_symbols()[i].name;
      if (m.pows[i] > 1) f += "^" + std::to_string(static_cast<int>(m.pows[i]));
      append(f);
    }
    return s;
  }

 private:
  void require_same_algebra(const ExteriorElement& o) const {
    if (!(alg_ == o.alg_)) throw std::invalid_argument("ExteriorElement: generator-set mismatch");
  }

  ExteriorAlgebra alg_;
  std::map<Monomial, Rational> terms_;
};

inline ExteriorElement ExteriorAlgebra::zero() const { return ExteriorElement(*this); }

inline ExteriorElement ExteriorAlgebra::scalar(const Rational& c) const {
  ExteriorElement e(*this);
  e.add_term(Monomial{}, c);
  return e;
}

inline ExteriorElement ExteriorAlgebra::one() const { return scalar(Rational(1)); }

inline ExteriorElement ExteriorAlgebra::x(int i) const {
  if (i < 1 || i > x_count_) throw std::invalid_argument("ExteriorAlgebra::x: index out of range");
  ExteriorElement e(*this);
  Monomial m;
  m.x_bits = 1u << (i - 1);
  m.degree = 1;
  e.add_term(m, Rational(1));
  return e;
}

inline ExteriorElement ExteriorAlgebra::y(int i) const {
  if (i < 1 || i > y_count_) throw std::invalid_argument("ExteriorAlgebra::y: index out of range");
  ExteriorElement e(*this);
  Monomial m;
  m.y_bits = 1u << (i - 1);
  m.degree = 1;
  e.add_term(m, Rational(1));
  return e;
}

inline ExteriorElement ExteriorAlgebra::even(std::string_view name) const {
  for (std::size_t i = 0; i < even_.size(); ++i) {
    if (even_[i].name == name) {
      ExteriorElement e(*this);
      Monomial m;
      m.pows[i] = 1;
      m.degree = even_[i].degree;
      e.add_term(m, Rational(1));
      return e;
    }
  }
  throw std::invalid_argument("ExteriorAlgebra::even: unknown symbol '" + std::string(name) + "'");
}

// Finite exponential sum; requires vanishing degree-0 part.
inline ExteriorElement exp_nilpotent(const ExteriorElement& a) {
  if (a.scalar_part() != 0)
    throw std::invalid_argument("exp_nilpotent: nonzero degree-0 component");
  const ExteriorAlgebra& alg = a.algebra();
  ExteriorElement result = alg.one();
  ExteriorElement term = alg.one();
  for (int j = 1; j <= alg.max_degree() + 1; ++j) {
    term = Rational(1, j) * (term * a);
    if (term.is_zero()) return result;
    result = result + term;
  }
  return result;
}

}  // namespace diracfam
