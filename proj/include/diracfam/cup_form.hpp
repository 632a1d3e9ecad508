#pragma once

#include <array>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diracfam/rational.hpp"

namespace diracfam {

inline constexpr int kMaxCupRank = 16;

// Alternating integral 3-form on a rank-b lattice, stored on strictly
// increasing index triples (1-based).
class CupForm {
 public:
  CupForm() = default;
  explicit CupForm(int b) : b_(b) {
    if (b < 0 || b > kMaxCupRank) throw std::invalid_argument("CupForm: rank out of range");
  }

  int betti() const { return b_; }
  bool is_zero() const { return coeff_.empty(); }
  const std::map<std::array<int, 3>, long long>& terms() const { return coeff_; }

  void set(int i, int j, int k, long long v) {
    if (!(1 <= i && i < j && j < k && k <= b_))
      throw std::invalid_argument("CupForm: indices must satisfy 1 <= i < j < k <= b");
    if (v == 0) {
      coeff_.erase({i, j, k});
    } else {
      coeff_[{i, j, k}] = v;
    }
  }

  // Signed value on any index triple; antisymmetric, 0 on repeats.
  long long coefficient(int i, int j, int k) const {
    std::array<int, 3> idx{i, j, k};
    int sign = 1;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2 - a; ++b)
        if (idx[b] > idx[b + 1]) {
          std::swap(idx[b], idx[b + 1]);
          sign = -sign;
        }
    if (idx[0] == idx[1] || idx[1] == idx[2]) return 0;
    auto it = coeff_.find(idx);
    return it == coeff_.end() ? 0 : sign * it->second;
  }

  friend CupForm operator+(const CupForm& a, const CupForm& b) {
    if (a.b_ != b.b_) throw std::invalid_argument("CupForm: rank mismatch");
    CupForm out(a.b_);
    out.coeff_ = a.coeff_;
    for (const auto& [idx, v] : b.coeff_) {
      long long sum = out.coefficient(idx[0], idx[1], idx[2]) + v;
      out.set(idx[0], idx[1], idx[2], sum);
    }
    return out;
  }

  friend CupForm operator*(long long s, const CupForm& a) {
    CupForm out(a.b_);
    if (s != 0)
      for (const auto& [idx, v] : a.coeff_) out.coeff_[idx] = s * v;
    return out;
  }

  friend bool operator==(const CupForm& a, const CupForm& b) {
    return a.b_ == b.b_ && a.coeff_ == b.coeff_;
  }

 private:
  int b_ = 0;
  std::map<std::array<int, 3>, long long> coeff_;
};

// "1,2,3:1; 4,5,6:-2" -> CupForm; empty string is the zero form.
inline CupForm parse_cup_form(std::string_view text, int b) {
  CupForm out(b);
  std::size_t pos = 0;
  std::string s(text);
  auto skip_ws = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  };
  skip_ws();
  while (pos < s.size()) {
    std::size_t semi = s.find(';', pos);
    std::string entry = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    auto colon = entry.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("parse_cup_form: entry missing ':' in '" + entry + "'");
    std::string idx_part = entry.substr(0, colon);
    std::string val_part = entry.substr(colon + 1);

    std::array<int, 3> idx{};
    int count = 0;
    std::size_t p = 0;
    while (p <= idx_part.size() && count < 4) {
      std::size_t comma = idx_part.find(',', p);
      std::string piece =
          idx_part.substr(p, comma == std::string::npos ? std::string::npos : comma - p);
      auto first = piece.find_first_not_of(" \t");
      auto last = piece.find_last_not_of(" \t");
      if (first == std::string::npos)
        throw std::invalid_argument("parse_cup_form: empty index in '" + entry + "'");
      if (count == 3) throw std::invalid_argument("parse_cup_form: more than three indices");
      try {
        idx[count++] = std::stoi(piece.substr(first, last - first + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_cup_form: bad index in '" + entry + "'");
      }
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    if (count != 3) throw std::invalid_argument("parse_cup_form: need three indices per entry");

    auto vf = val_part.find_first_not_of(" \t");
    auto vl = val_part.find_last_not_of(" \t");
    if (vf == std::string::npos) throw std::invalid_argument("parse_cup_form: missing value");
    long long v = 0;
    try {
      v = std::stoll(val_part.substr(vf, vl - vf + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_cup_form: bad value in '" + entry + "'");
    }
    if (out.coefficient(idx[0], idx[1], idx[2]) != 0)
      throw std::invalid_argument("parse_cup_form: duplicate triple");
    out.set(idx[0], idx[1], idx[2], v);

    if (semi == std::string::npos) break;
    pos = semi + 1;
    skip_ws();
  }
  return out;
}

inline std::string format_cup_form(const CupForm& f) {
  std::string s;
  for (const auto& [idx, v] : f.terms()) {
    if (!s.empty()) s += "; ";
    s += std::to_string(idx[0]) + "," + std::to_string(idx[1]) + "," + std::to_string(idx[2]) +
         ":" + std::to_string(v);
  }
  return s;
}

// Pullback along the basis change with matrix g (columns are the new basis
// vectors in the old coordinates): zeta'(f_p, f_q, f_r).
inline CupForm transform_basis(const CupForm& f, const std::vector<std::vector<long long>>& g) {
  int b = f.betti();
  if (static_cast<int>(g.size()) != b)
    throw std::invalid_argument("transform_basis: matrix must be b x b");
  for (const auto& row : g)
    if (static_cast<int>(row.size()) != b)
      throw std::invalid_argument("transform_basis: matrix must be b x b");

  CupForm out(b);
  for (int p = 1; p <= b; ++p)
    for (int q = p + 1; q <= b; ++q)
      for (int r = q + 1; r <= b; ++r) {
        long long total = 0;
        for (const auto& [idx, v] : f.terms()) {
          int a0 = idx[0] - 1, a1 = idx[1] - 1, a2 = idx[2] - 1;
          long long det = g[a0][p - 1] * (g[a1][q - 1] * g[a2][r - 1] - g[a1][r - 1] * g[a2][q - 1]) -
                          g[a0][q - 1] * (g[a1][p - 1] * g[a2][r - 1] - g[a1][r - 1] * g[a2][p - 1]) +
                          g[a0][r - 1] * (g[a1][p - 1] * g[a2][q - 1] - g[a1][q - 1] * g[a2][p - 1]);
          total += v * det;
        }
        if (total != 0) out.set(p, q, r, total);
      }
  return out;
}

// Product of random elementary integer operations; determinant +/-1.
inline std::vector<std::vector<long long>> random_unimodular(int b, std::mt19937& rng,
                                                             int steps = 12) {
  std::vector<std::vector<long long>> g(b, std::vector<long long>(b, 0));
  for (int i = 0; i < b; ++i) g[i][i] = 1;
  if (b < 2) return g;
  std::uniform_int_distribution<int> pick(0, b - 1);
  std::uniform_int_distribution<int> choice(0, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int s = 0; s < steps; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    switch (choice(rng)) {
      case 0:  // row_i += +/- row_j
        for (int k = 0; k < b; ++k) g[i][k] += (sign(rng) ? 1 : -1) * g[j][k];
        break;
      case 1:  // swap
        std::swap(g[i], g[j]);
        break;
      default:  // negate
        for (int k = 0; k < b; ++k) g[i][k] = -g[i][k];
        break;
    }
  }
  return g;
}

}  // namespace diracfam
