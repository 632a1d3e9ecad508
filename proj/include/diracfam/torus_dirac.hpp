#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diracfam/clifford.hpp"

namespace diracfam {

// Point of the parameter torus of flat connections, held in the universal
// cover R^n. c and c + k for integral k describe conjugate operators.
struct TwistParameter {
  std::vector<Rational> c;

  TwistParameter() = default;
  explicit TwistParameter(std::vector<Rational> coords) : c(std::move(coords)) {
    if (c.empty()) throw std::invalid_argument("TwistParameter: empty coordinate vector");
  }

  int dimension() const { return static_cast<int>(c.size()); }

  bool is_integral() const {
    return std::all_of(c.begin(), c.end(), [](const Rational& r) { return diracfam::is_integral(r); });
  }

  Rational sup_norm() const {
    Rational m(0);
    for (const auto& r : c) {
      Rational a = abs_of(r);
      if (m < a) m = a;
    }
    return m;
  }

  // Representative in the fundamental domain (-1/2, 1/2]^n.
  TwistParameter canonical() const {
    std::vector<Rational> out;
    out.reserve(c.size());
    for (const auto& r : c) out.push_back(r - Rational(rational_ceil(r - Rational(1, 2))));
    return TwistParameter(std::move(out));
  }

  friend bool operator==(const TwistParameter& a, const TwistParameter& b) { return a.c == b.c; }
};

// "1/4,0,-0.5" -> twist vector; accepts any parse_rational coordinate format.
inline TwistParameter parse_twist(std::string_view text) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  std::string s(text);
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto first = part.find_first_not_of(" \t");
    auto last = part.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("parse_twist: empty coordinate");
    coords.push_back(parse_rational(part.substr(first, last - first + 1)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return TwistParameter(std::move(coords));
}

inline TwistParameter twist_from_doubles(const std::vector<double>& v) {
  std::vector<Rational> coords;
  coords.reserve(v.size());
  for (double x : v) coords.push_back(rational_from_double(x));
  return TwistParameter(std::move(coords));
}

// One eigenvalue sign * sqrt(square) with its multiplicity; the square is kept
// exact so grouping and ordering never need a floating tolerance.
struct SpectrumEntry {
  int sign = 0;  // -1, 0, +1
  Rational square{0};
  long long multiplicity = 0;

  double value() const {
    if (sign == 0) return 0.0;
    // exact square root when available, so printed values match exact inputs
    Integer num = numerator(square), den = denominator(square);
    Integer sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
    double mag = (sn * sn == num && sd * sd == den)
                     ? to_double(Rational(sn, sd))
                     : std::sqrt(to_double(square));
    return sign > 0 ? mag : -mag;
  }

  friend bool operator==(const SpectrumEntry& a, const SpectrumEntry& b) {
    return a.sign == b.sign && a.square == b.square && a.multiplicity == b.multiplicity;
  }
};

// Strict ordering by the real eigenvalue.
inline bool eigenvalue_less(int sign_a, const Rational& sq_a, int sign_b, const Rational& sq_b) {
  if (sign_a != sign_b) return sign_a < sign_b;
  if (sign_a > 0) return sq_a < sq_b;
  if (sign_a < 0) return sq_b < sq_a;
  return false;
}

struct SpectrumSlice {
  int n = 0;
  TwistParameter twist;
  int K = 0;
  Rational completeness_radius{0};
  std::size_t spinor_rank = 0;
  std::vector<SpectrumEntry> entries;

  long long total_multiplicity() const {
    long long t = 0;
    for (const auto& e : entries) t += e.multiplicity;
    return t;
  }
};

struct ModeSymbol {
  std::vector<long long> k;
  ComplexRationalMatrix matrix;
};

namespace detail {

inline void require_dimension(int n) {
  if (n < 1 || n > kMaxCliffordDim)
    throw std::invalid_argument("dimension must lie in [1, 12]");
}

inline void require_twist(int n, const TwistParameter& c) {
  if (c.dimension() != n) throw std::invalid_argument("twist dimension mismatch");
}

inline void require_cutoff(int K) {
  if (K < 1) throw std::invalid_argument("mode cutoff K must be >= 1");
}

// Visits every lattice vector with |k|_inf <= K in lexicographic order.
inline void for_each_mode(int n, int K,
                          const std::function<void(const std::vector<long long>&)>& fn) {
  std::vector<long long> k(n, -K);
  while (true) {
    fn(k);
    int i = n - 1;
    while (i >= 0 && k[i] == K) k[i--] = -K;
    if (i < 0) break;
    ++k[i];
  }
}

inline std::vector<Rational> shifted_mode(const std::vector<long long>& k,
                                          const TwistParameter& c) {
  std::vector<Rational> v(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) v[j] = Rational(k[j]) + c.c[j];
  return v;
}

}  // namespace detail

inline ModeSymbol mode_symbol(const CliffordRep& rep, const std::vector<long long>& k,
                              const TwistParameter& c) {
  detail::require_twist(rep.n, c);
  if (k.size() != static_cast<std::size_t>(rep.n))
    throw std::invalid_argument("mode_symbol: mode dimension mismatch");
  return ModeSymbol{k, dirac_symbol(rep, detail::shifted_mode(k, c))};
}

// Exact eigenvalues of the truncated twisted operator over modes |k|_inf <= K.
// Circle case: m + c with multiplicity 1. Higher n: +/-|k+c| with multiplicity
// N/2 per mode, all N eigenvalues 0 when k + c = 0.
inline SpectrumSlice spectrum(int n, const TwistParameter& c, int K) {
  detail::require_dimension(n);
  detail::require_twist(n, c);
  detail::require_cutoff(K);

  auto cmp = [](const std::pair<int, Rational>& a, const std::pair<int, Rational>& b) {
    return eigenvalue_less(a.first, a.second, b.first, b.second);
  };
  std::map<std::pair<int, Rational>, long long, decltype(cmp)> acc(cmp);

  long long half = static_cast<long long>(spinor_rank(n)) / 2;
  detail::for_each_mode(n, K, [&](const std::vector<long long>& k) {
    if (n == 1) {
      Rational v = Rational(k[0]) + c.c[0];
      acc[{sign_of(v), v * v}] += 1;
      return;
    }
    Rational sq(0);
    for (int j = 0; j < n; ++j) {
      Rational v = Rational(k[j]) + c.c[j];
      sq += v * v;
    }
    if (sq == 0) {
      acc[{0, Rational(0)}] += 2 * half;
    } else {
      acc[{-1, sq}] += half;
      acc[{1, sq}] += half;
    }
  });

  SpectrumSlice slice;
  slice.n = n;
  slice.twist = c;
  slice.K = K;
  slice.completeness_radius = Rational(K) - c.sup_norm();
  slice.spinor_rank = spinor_rank(n);
  slice.entries.reserve(acc.size());
  for (const auto& [key, mult] : acc)
    slice.entries.push_back(SpectrumEntry{key.first, key.second, mult});
  return slice;
}

// Kernel of the full operator: constant spinors at gauge-trivial twists, else
// |k+c| >= dist(c, Z^n) > 0 kills every mode.
inline std::size_t harmonic_spinor_dimension(int n, const TwistParameter& c) {
  detail::require_dimension(n);
  detail::require_twist(n, c);
  return c.is_integral() ? spinor_rank(n) : 0;
}

struct ChiralIndexReport {
  long long dim_ker_plus = 0;
  long long dim_ker_minus = 0;
  long long index() const { return dim_ker_plus - dim_ker_minus; }
};

// Mode-by-mode kernels of the chiral blocks D+/-; exact ranks.
inline ChiralIndexReport chiral_index(int n, const TwistParameter& c, int K) {
  detail::require_dimension(n);
  if (n % 2 != 0) throw std::invalid_argument("chiral_index: even dimension required");
  detail::require_twist(n, c);
  detail::require_cutoff(K);

  auto rep = build_clifford(n);
  auto [q_plus, q_minus] = chiral_basis(rep);
  long long half = static_cast<long long>(rep.N) / 2;

  ChiralIndexReport report;
  detail::for_each_mode(n, K, [&](const std::vector<long long>& k) {
    auto m = dirac_symbol(rep, detail::shifted_mode(k, c));
    report.dim_ker_plus += half - static_cast<long long>(rank(m * q_plus));
    report.dim_ker_minus += half - static_cast<long long>(rank(m * q_minus));
  });
  return report;
}

// Max entrywise deviation of M_k(c)^2 - |k+c|^2 I over the mode box; the flat
// scalar curvature term is zero, so the contract is exact 0.
inline Rational verify_lichnerowicz(int n, const TwistParameter& c, int K) {
  detail::require_dimension(n);
  detail::require_twist(n, c);
  detail::require_cutoff(K);

  auto rep = build_clifford(n);
  const std::size_t N = rep.N;

  // Fast path: clear the twist denominators and run the mode loop in machine
  // words. The generators are Gaussian integers, so after scaling by the
  // common denominator d every quantity is an integer; the deviation computed
  // below is identical to the big-rational evaluation, just d^2 times larger.
  bool fast_ok = true;
  Integer d_big(1);
  for (const auto& r : c.c) d_big = lcm(d_big, denominator(r));
  if (d_big > 1000000) fast_ok = false;

  std::vector<std::int64_t> scaled(n, 0);
  if (fast_ok) {
    for (int j = 0; j < n; ++j) {
      Integer num = numerator(c.c[j]) * (d_big / denominator(c.c[j]));
      if (num > 100000000 || num < -100000000) {
        fast_ok = false;
        break;
      }
      scaled[j] = num.convert_to<std::int64_t>();
    }
  }

  std::vector<std::vector<std::int64_t>> gre(n), gim(n);
  if (fast_ok) {
    for (int j = 0; j < n && fast_ok; ++j) {
      gre[j].resize(N * N);
      gim[j].resize(N * N);
      for (std::size_t r = 0; r < N && fast_ok; ++r)
        for (std::size_t col = 0; col < N; ++col) {
          const ComplexRational& z = rep.generators[j](r, col);
          if (!is_integral(z.re) || !is_integral(z.im) || abs_of(z.re) > 8 || abs_of(z.im) > 8) {
            fast_ok = false;
            break;
          }
          gre[j][r * N + col] = numerator(z.re).convert_to<std::int64_t>();
          gim[j][r * N + col] = numerator(z.im).convert_to<std::int64_t>();
        }
    }
  }

  if (fast_ok) {
    const std::int64_t d = d_big.convert_to<std::int64_t>();
    std::int64_t w_max = 0;
    for (int j = 0; j < n; ++j)
      w_max = std::max<std::int64_t>(w_max, d * K + std::llabs(scaled[j]));
    // Entry bound after one complex matrix square; 8 covers the generator
    // entry magnitude checked above, 2 the complex product components.
    Integer bound = Integer(2) * Integer(N) * Integer(8 * n) * w_max * Integer(8 * n) * w_max +
                    Integer(n) * w_max * w_max;
    if (bound >= (Integer(1) << 62)) fast_ok = false;

    if (fast_ok) {
      std::int64_t worst_scaled = 0;
      std::vector<std::int64_t> w(n), sre(N * N), sim(N * N);
      detail::for_each_mode(n, K, [&](const std::vector<long long>& k) {
        std::int64_t sq = 0;
        for (int j = 0; j < n; ++j) {
          w[j] = d * k[j] + scaled[j];
          sq += w[j] * w[j];
        }
        std::fill(sre.begin(), sre.end(), 0);
        std::fill(sim.begin(), sim.end(), 0);
        for (int j = 0; j < n; ++j) {
          if (w[j] == 0) continue;
          for (std::size_t idx = 0; idx < N * N; ++idx) {
            sre[idx] += w[j] * gre[j][idx];
            sim[idx] += w[j] * gim[j][idx];
          }
        }
        // The symbol is i * sum_j w_j A_j, so its square is minus the square
        // of the accumulated real combination.
        for (std::size_t r = 0; r < N; ++r)
          for (std::size_t col = 0; col < N; ++col) {
            std::int64_t re = 0, im = 0;
            for (std::size_t m = 0; m < N; ++m) {
              re += sre[r * N + m] * sre[m * N + col] - sim[r * N + m] * sim[m * N + col];
              im += sre[r * N + m] * sim[m * N + col] + sim[r * N + m] * sre[m * N + col];
            }
            re = -re;
            im = -im;
            if (r == col) re -= sq;
            worst_scaled = std::max<std::int64_t>(worst_scaled, std::llabs(re));
            worst_scaled = std::max<std::int64_t>(worst_scaled, std::llabs(im));
          }
      });
      return Rational(Integer(worst_scaled), d_big * d_big);
    }
  }

  const auto I = ComplexRationalMatrix::identity(rep.N);
  Rational worst(0);
  detail::for_each_mode(n, K, [&](const std::vector<long long>& k) {
    auto v = detail::shifted_mode(k, c);
    Rational sq(0);
    for (const auto& x : v) sq += x * x;
    auto m = dirac_symbol(rep, v);
    Rational dev = (m * m - ComplexRational(sq) * I).sup_abs();
    if (worst < dev) worst = dev;
  });
  return worst;
}

// True when the two truncated spectra coincide on |lambda| <= R.
inline bool spectra_agree_within(const SpectrumSlice& a, const SpectrumSlice& b,
                                 const Rational& R) {
  if (R < 0) return true;
  Rational r_sq = R * R;
  auto filter = [&](const SpectrumSlice& s) {
    std::vector<SpectrumEntry> out;
    for (const auto& e : s.entries)
      if (e.square <= r_sq) out.push_back(e);
    return out;
  };
  return filter(a) == filter(b);
}

// Gauge-invariant comparison: canonicalize both twists, then compare on the
// common completeness radius. Guaranteed true when c - c' is integral.
inline bool spectra_conjugacy_check(int n, const TwistParameter& c, const TwistParameter& c2,
                                    int K) {
  detail::require_dimension(n);
  detail::require_twist(n, c);
  detail::require_twist(n, c2);
  detail::require_cutoff(K);

  auto slice_a = spectrum(n, c.canonical(), K);
  auto slice_b = spectrum(n, c2.canonical(), K);
  Rational R = std::min(slice_a.completeness_radius, slice_b.completeness_radius);
  return spectra_agree_within(slice_a, slice_b, R);
}

}  // namespace diracfam
