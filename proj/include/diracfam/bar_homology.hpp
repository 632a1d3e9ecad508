#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diracfam/cup_form.hpp"
#include "diracfam/exact_matrix.hpp"
#include "diracfam/exterior.hpp"

namespace diracfam {

inline constexpr int kMaxBarRank = 10;

namespace detail {

// k-subsets of {0..b-1} as bitmasks, ascending; ascending mask order doubles
// as the canonical basis order of Lambda^k.
inline std::vector<std::uint32_t> subsets_of_size(int b, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > b) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << i;
    out.push_back(mask);
    int i = k - 1;
    while (i >= 0 && idx[i] == b - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());  // ascending masks so subset_index can bisect
  return out;
}

inline std::size_t subset_index(const std::vector<std::uint32_t>& sorted, std::uint32_t mask) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), mask);
  return static_cast<std::size_t>(it - sorted.begin());
}

// Fraction-free Gaussian elimination; destroys the buffer.
inline std::size_t int_matrix_rank(std::vector<long long>& a, std::size_t rows,
                                   std::size_t cols) {
  std::size_t r = 0;
  long long prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    long long pivot = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      long long f = a[i * cols + c];
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = (a[i * cols + j] * pivot - f * a[r * cols + j]) / prev;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

}  // namespace detail

// Matrices of (zeta wedge .) : Lambda^k -> Lambda^{k+3} for k = 0..b. The full
// twisted complex is this family repeated 2-periodically in the U-power.
struct BarComplex {
  int b = 0;
  std::vector<long long> dims;          // dim Lambda^k
  std::vector<RationalMatrix> maps;     // maps[k], C(b,k+3) x C(b,k)
};

inline BarComplex build_complex(const CupForm& cup) {
  int b = cup.betti();
  if (b > kMaxBarRank) throw std::invalid_argument("build_complex: rank exceeds supported bound");

  BarComplex cx;
  cx.b = b;
  std::vector<std::vector<std::uint32_t>> basis(b + 4);
  for (int k = 0; k <= b + 3; ++k) basis[k] = detail::subsets_of_size(b, k);

  for (int k = 0; k <= b; ++k) {
    const auto& src = basis[k];
    const auto& dst = k + 3 <= b ? basis[k + 3] : basis[b + 1];  // empty when out of range
    RationalMatrix m(dst.size(), src.size());
    for (std::size_t col = 0; col < src.size(); ++col) {
      std::uint32_t s = src[col];
      for (const auto& [idx, v] : cup.terms()) {
        std::uint32_t t = (1u << (idx[0] - 1)) | (1u << (idx[1] - 1)) | (1u << (idx[2] - 1));
        if (t & s) continue;
        int parity = detail::inversion_parity(t, s);
        std::size_t row = detail::subset_index(dst, t | s);
        m(row, col) += parity ? Rational(-v) : Rational(v);
      }
    }
    cx.maps.push_back(std::move(m));
    cx.dims.push_back(static_cast<long long>(src.size()));
  }

  for (int k = 0; k + 3 <= b; ++k)
    if (!(cx.maps[k + 3] * cx.maps[k]).is_zero())
      throw std::logic_error("build_complex: differential does not square to zero");
  return cx;
}

struct BarRanks {
  long long even = 0;
  long long odd = 0;
  std::vector<long long> survivors;  // homology contribution of Lambda^k, k = 0..b

  friend bool operator==(const BarRanks&, const BarRanks&) = default;
};

// Graded ranks of one 2-periodic period: survivors of Lambda^k summed by
// parity of k.
inline BarRanks bar_ranks(const CupForm& cup) {
  BarComplex cx = build_complex(cup);
  std::vector<std::size_t> ranks(cx.maps.size());
  for (std::size_t k = 0; k < cx.maps.size(); ++k) ranks[k] = rank(cx.maps[k]);

  BarRanks out;
  out.survivors.resize(cx.dims.size());
  for (std::size_t k = 0; k < cx.dims.size(); ++k) {
    long long s = cx.dims[k] - static_cast<long long>(ranks[k]);
    if (k >= 3) s -= static_cast<long long>(ranks[k - 3]);
    out.survivors[k] = s;
    (k % 2 == 0 ? out.even : out.odd) += s;
  }
  return out;
}

struct NonvanishingReport {
  bool nonvanishing = false;
  std::vector<int> witness_degrees;
  std::vector<std::string> representatives;  // one surviving cycle per witness degree
};

namespace detail {

inline std::string render_lambda_vector(const RationalMatrix& column,
                                        const std::vector<std::uint32_t>& basis, int) {
  std::string s;
  bool first = true;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Rational& c = column(i, 0);
    if (c == 0) continue;
    std::string mono;
    std::uint32_t mask = basis[i];
    for (int bit = 0; bit < 32; ++bit)
      if (mask & (1u << bit)) {
        if (!mono.empty()) mono += "^";
        mono += "e" + std::to_string(bit + 1);
      }
    if (mono.empty()) mono = "1";
    Rational mag = abs_of(c);
    std::string piece = (mag == 1) ? mono : format_rational(mag) + "*" + mono;
    if (first) {
      s = (c < 0 ? "-" : "") + piece;
      first = false;
    } else {
      s += (c < 0 ? " - " : " + ") + piece;
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace detail

// Witness degrees with explicit surviving cycles; by 2-periodicity one period
// certifies infinitely many gradings.
inline NonvanishingReport nonvanishing_check(const CupForm& cup) {
  BarComplex cx = build_complex(cup);
  BarRanks ranks = bar_ranks(cup);

  NonvanishingReport report;
  for (int k = 0; k <= cx.b; ++k) {
    if (ranks.survivors[k] <= 0) continue;
    report.witness_degrees.push_back(k);

    auto kernel = kernel_basis(cx.maps[k]);
    RationalMatrix image = k >= 3 ? column_space_basis(cx.maps[k - 3])
                                  : RationalMatrix(cx.dims[k], 0);
    std::size_t base_rank = rank(image);
    std::string rep = "0";
    for (std::size_t j = 0; j < kernel.cols(); ++j) {
      RationalMatrix augmented(kernel.rows(), image.cols() + 1);
      for (std::size_t i = 0; i < image.rows(); ++i) {
        for (std::size_t a = 0; a < image.cols(); ++a) augmented(i, a) = image(i, a);
        augmented(i, image.cols()) = kernel(i, j);
      }
      if (rank(augmented) > base_rank) {
        RationalMatrix column(kernel.rows(), 1);
        for (std::size_t i = 0; i < kernel.rows(); ++i) column(i, 0) = kernel(i, j);
        rep = detail::render_lambda_vector(column, detail::subsets_of_size(cx.b, k), cx.b);
        break;
      }
    }
    report.representatives.push_back(rep);
  }
  report.nonvanishing = ranks.even + ranks.odd > 0;
  return report;
}

struct ScanReport {
  unsigned long long forms_checked = 0;
  unsigned long long nonvanishing_count = 0;
  std::vector<CupForm> failures;
};

// Exhaustive nonvanishing sweep over all cup forms with |coefficients| <=
// bound, on a fast integer elimination path (cross-checked against bar_ranks
// in the test suite).
inline ScanReport exhaustive_nonvanishing_scan(int b, long long bound) {
  if (b < 0 || b > 5) throw std::invalid_argument("exhaustive_nonvanishing_scan: b must be in [0, 5]");
  if (bound < 0) throw std::invalid_argument("exhaustive_nonvanishing_scan: negative bound");

  std::vector<std::array<int, 3>> triples;
  for (int i = 1; i <= b; ++i)
    for (int j = i + 1; j <= b; ++j)
      for (int k = j + 1; k <= b; ++k) triples.push_back({i, j, k});

  std::vector<std::vector<std::uint32_t>> basis(b + 4);
  for (int k = 0; k <= b + 3; ++k) basis[k] = detail::subsets_of_size(b, k);

  // sparse structure of every map, independent of the coefficients
  struct Entry {
    int k;
    std::size_t offset;  // row * cols + col
    int sign;
    std::size_t t_index;
  };
  std::vector<Entry> entries;
  std::vector<std::size_t> rows(b + 1, 0), cols(b + 1, 0);
  int k_max = b - 3;
  for (int k = 0; k <= k_max; ++k) {
    rows[k] = basis[k + 3].size();
    cols[k] = basis[k].size();
    for (std::size_t col = 0; col < basis[k].size(); ++col) {
      std::uint32_t s = basis[k][col];
      for (std::size_t t = 0; t < triples.size(); ++t) {
        std::uint32_t tm = (1u << (triples[t][0] - 1)) | (1u << (triples[t][1] - 1)) |
                           (1u << (triples[t][2] - 1));
        if (tm & s) continue;
        std::size_t row = detail::subset_index(basis[k + 3], tm | s);
        entries.push_back(
            {k, row * basis[k].size() + col, detail::inversion_parity(tm, s) ? -1 : 1, t});
      }
    }
  }

  std::vector<std::vector<long long>> buffers(k_max + 1 > 0 ? k_max + 1 : 0);
  for (int k = 0; k <= k_max; ++k) buffers[k].resize(rows[k] * cols[k]);

  long long total_dim = 0;
  for (int k = 0; k <= b; ++k) total_dim += static_cast<long long>(basis[k].size());

  std::vector<long long> coeff(triples.size(), -bound);
  ScanReport report;
  while (true) {
    for (auto& buf : buffers) std::fill(buf.begin(), buf.end(), 0);
    for (const auto& e : entries) buffers[e.k][e.offset] += e.sign * coeff[e.t_index];

    // each rank is subtracted once as d-rank and once as image inside ker
    long long rank_sum = 0;
    for (int k = 0; k <= k_max; ++k) {
      std::vector<long long> work = buffers[k];
      rank_sum += static_cast<long long>(detail::int_matrix_rank(work, rows[k], cols[k]));
    }
    long long survivors_total = total_dim - 2 * rank_sum;

    ++report.forms_checked;
    if (survivors_total > 0) {
      ++report.nonvanishing_count;
    } else {
      CupForm bad(b);
      for (std::size_t t = 0; t < triples.size(); ++t)
        if (coeff[t] != 0) bad.set(triples[t][0], triples[t][1], triples[t][2], coeff[t]);
      report.failures.push_back(bad);
    }

    std::size_t i = 0;
    while (i < coeff.size() && coeff[i] == bound) coeff[i++] = -bound;
    if (i == coeff.size()) break;
    ++coeff[i];
  }
  return report;
}

}  // namespace diracfam
