#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "diracfam/torus_dirac.hpp"

namespace diracfam {

// Piecewise-linear path in the universal cover of the parameter torus.
struct ParamPath {
  std::vector<std::vector<Rational>> vertices;
  bool closed = false;

  ParamPath(std::vector<std::vector<Rational>> v, bool is_closed)
      : vertices(std::move(v)), closed(is_closed) {
    if (vertices.size() < 2) throw std::invalid_argument("ParamPath: need at least 2 vertices");
    for (const auto& vert : vertices)
      if (vert.size() != vertices.front().size() || vert.empty())
        throw std::invalid_argument("ParamPath: inconsistent vertex dimensions");
    if (closed) {
      for (std::size_t j = 0; j < vertices.front().size(); ++j)
        if (!is_integral(vertices.back()[j] - vertices.front()[j]))
          throw std::invalid_argument("ParamPath: closed path must end an integral shift away");
    }
  }

  int dimension() const { return static_cast<int>(vertices.front().size()); }

  Rational sup_bound() const {
    Rational m(0);
    for (const auto& v : vertices)
      for (const auto& x : v) {
        Rational a = abs_of(x);
        if (m < a) m = a;
      }
    return m;
  }
};

namespace detail {

// Eigenvalues >= 0 of the truncated operator at twist c: every mode gives a
// nonnegative half-branch, and a gauge-trivial mode adds the other half of the
// zero eigenvalue. Circle case counts m + c >= 0 directly.
inline long long nonneg_count(int n, int K, const std::vector<Rational>& c) {
  if (n == 1) {
    // m >= -c, m in [-K, K]; safe region keeps -c strictly inside
    long long lower = static_cast<long long>(rational_ceil(-c[0]));
    return K - lower + 1;
  }
  long long modes = 1;
  for (int j = 0; j < n; ++j) modes *= 2 * K + 1;
  long long half = static_cast<long long>(spinor_rank(n)) / 2;
  bool integral = std::all_of(c.begin(), c.end(), [](const Rational& r) { return is_integral(r); });
  return half * modes + (integral ? half : 0);
}

}  // namespace detail

// Net count of eigenvalue branches moving from < 0 to >= 0 along the path,
// evaluated in closed form from the exact branch structure. Touches of the
// +/-|k+c| branches at 0 contribute nothing; only the signed circle branches
// m + c and windowed branch turnover do.
inline long long exact_flow(int n, const ParamPath& path, int K) {
  detail::require_dimension(n);
  if (path.dimension() != n) throw std::invalid_argument("exact_flow: path dimension mismatch");
  detail::require_cutoff(K);
  if (Rational(K) < path.sup_bound() + 1)
    throw std::invalid_argument("exact_flow: path exits the truncation-safe region (need K >= path bound + 1)");

  long long total = 0;
  for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s)
    total += detail::nonneg_count(n, K, path.vertices[s + 1]) -
             detail::nonneg_count(n, K, path.vertices[s]);
  return total;
}

// Hermitian samples interpreted as a piecewise-linear matrix family.
struct HermitianFamily {
  std::vector<double> times;
  std::vector<Eigen::MatrixXcd> matrices;
};

namespace detail {

inline void validate_family(const HermitianFamily& f) {
  if (f.times.size() != f.matrices.size() || f.times.size() < 2)
    throw std::invalid_argument("HermitianFamily: need matching times/matrices, at least 2");
  const auto d = f.matrices.front().rows();
  for (std::size_t i = 0; i < f.times.size(); ++i) {
    if (i > 0 && !(f.times[i - 1] < f.times[i]))
      throw std::invalid_argument("HermitianFamily: times must be strictly increasing");
    const auto& m = f.matrices[i];
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("HermitianFamily: inconsistent matrix sizes");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("HermitianFamily: matrix not Hermitian within 1e-12");
  }
}

inline Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline long long negative_count(const Eigen::VectorXd& ev) {
  long long c = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < 0) ++c;
  return c;
}

inline double min_abs_eigenvalue(const Eigen::VectorXd& ev) {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) m = std::min(m, std::abs(ev[i]));
  return m;
}

inline Eigen::MatrixXcd interpolate(const HermitianFamily& f, std::size_t seg, double t) {
  double t0 = f.times[seg], t1 = f.times[seg + 1];
  double s = (t - t0) / (t1 - t0);
  return (1.0 - s) * f.matrices[seg] + s * f.matrices[seg + 1];
}

}  // namespace detail

// Signed zero-crossing count, +1 per eigenvalue leaving (-inf, 0). Endpoints
// must be gapped; interior samples inside the tolerance band are accepted only
// after step-halving finds gapped brackets on both sides (transversal
// crossing), otherwise the computation reports non-convergence.
inline long long numeric_flow(const HermitianFamily& family, double tol = 1e-9,
                              int max_refine = 10) {
  detail::validate_family(family);
  if (!(tol > 0)) throw std::invalid_argument("numeric_flow: tolerance must be positive");

  const std::size_t m = family.times.size();
  std::vector<Eigen::VectorXd> spectra(m);
  for (std::size_t i = 0; i < m; ++i)
    spectra[i] = detail::sorted_eigenvalues(family.matrices[i]);

  if (detail::min_abs_eigenvalue(spectra.front()) <= tol ||
      detail::min_abs_eigenvalue(spectra.back()) <= tol)
    throw std::invalid_argument("numeric_flow: endpoint eigenvalue within tolerance of zero");

  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (detail::min_abs_eigenvalue(spectra[i]) > tol) continue;
    double left_gap = family.times[i] - family.times[i - 1];
    double right_gap = family.times[i + 1] - family.times[i];
    bool certified = false;
    for (int depth = 0; depth <= max_refine && !certified; ++depth) {
      double scale = std::ldexp(0.5, -depth);  // 1/2, 1/4, ...
      double t_minus = family.times[i] - left_gap * scale;
      double t_plus = family.times[i] + right_gap * scale;
      double lo = detail::min_abs_eigenvalue(
          detail::sorted_eigenvalues(detail::interpolate(family, i - 1, t_minus)));
      double hi = detail::min_abs_eigenvalue(
          detail::sorted_eigenvalues(detail::interpolate(family, i, t_plus)));
      certified = lo > tol && hi > tol;
    }
    if (!certified)
      throw std::runtime_error(
          "numeric_flow: refinement budget exhausted near an interior degeneracy (non-convergence)");
  }

  return detail::negative_count(spectra.front()) - detail::negative_count(spectra.back());
}

namespace detail {

// Winding of a cyclic sequence of nonzero complex values, via principal-value
// phase steps. Steps close to a half turn are rejected as aliasing.
inline long long phase_winding(const std::vector<std::complex<double>>& vals,
                               double zero_tol = 1e-12) {
  if (vals.size() < 2) throw std::invalid_argument("phase_winding: need at least 2 samples");
  double scale = 0;
  for (const auto& v : vals) scale = std::max(scale, std::abs(v));
  if (scale == 0) throw std::runtime_error("phase_winding: zero sample");
  double total = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto& a = vals[i];
    const auto& b = vals[(i + 1) % vals.size()];
    if (std::abs(a) <= zero_tol * scale || std::abs(b) <= zero_tol * scale)
      throw std::runtime_error("phase_winding: sample within tolerance of zero");
    double step = std::arg(b / a);
    if (std::abs(step) >= std::numbers::pi - 1e-3)
      throw std::runtime_error("phase_winding: step too coarse (aliasing)");
    total += step;
  }
  double turns = total / (2 * std::numbers::pi);
  long long w = std::llround(turns);
  if (std::abs(turns - static_cast<double>(w)) > 1e-6)
    throw std::runtime_error("phase_winding: winding sum is not an integer");
  return w;
}

}  // namespace detail

// Winding number of det along a cyclic loop of unitary matrices.
inline long long unitary_winding(const std::vector<Eigen::MatrixXcd>& loop,
                                 double unitary_tol = 1e-9) {
  if (loop.size() < 2) throw std::invalid_argument("unitary_winding: need at least 2 samples");
  const auto d = loop.front().rows();
  std::vector<std::complex<double>> dets;
  dets.reserve(loop.size());
  for (const auto& u : loop) {
    if (u.rows() != d || u.cols() != d)
      throw std::invalid_argument("unitary_winding: inconsistent matrix sizes");
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > unitary_tol)
      throw std::invalid_argument("unitary_winding: matrix not unitary within tolerance");
    dets.push_back(u.determinant());
  }
  return detail::phase_winding(dets);
}

}  // namespace diracfam
