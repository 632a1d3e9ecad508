#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diracfam/spectral_flow.hpp"
#include "diracfam/torus_dirac.hpp"

namespace diracfam {

// Twist at which the truncated chiral operator acquires a kernel, together
// with the lattice modes responsible for it.
struct JumpPoint {
  std::vector<Rational> location;
  std::vector<std::vector<long long>> modes;
};

// Enumerates the fundamental-domain twists where some window mode satisfies
// k + c = 0. On the flat torus every candidate canonicalizes to the origin.
inline std::vector<JumpPoint> kernel_jump_loci(int n, int K) {
  detail::require_dimension(n);
  if (n % 2 != 0) throw std::invalid_argument("kernel_jump_loci: dimension must be even");
  detail::require_cutoff(K);

  std::vector<JumpPoint> loci;
  detail::for_each_mode(n, K, [&](const std::vector<long long>& k) {
    std::vector<Rational> loc(n);
    for (int j = 0; j < n; ++j) loc[j] = Rational(-k[j]);
    TwistParameter canon = TwistParameter(loc).canonical();
    bool jumping = true;
    for (int j = 0; j < n; ++j)
      if (!(Rational(k[j]) + canon.c[j] == 0)) jumping = false;
    if (!jumping) return;  // k collides with another mode's jump, not its own
    for (auto& known : loci)
      if (known.location == canon.c) {
        known.modes.push_back(k);
        return;
      }
    loci.push_back({canon.c, {k}});
  });
  return loci;
}

// Off-diagonal block of the 2-torus mode symbol: the chiral part of
// i((v1)a1 + (v2)a2) acting S+ -> S-.
inline std::complex<double> chiral_symbol2(double v1, double v2) {
  return std::complex<double>(-v2, v1);  // i*v1 - v2
}

// Winding of the jumping-block determinant along the counterclockwise circle
// of the given radius around the jump location. Zero when the loop encloses
// no kernel point.
inline long long local_winding_degree(const JumpPoint& jump, double radius, int samples) {
  if (jump.location.size() != 2)
    throw std::invalid_argument("local_winding_degree: only 2-parameter tori are supported");
  if (jump.modes.empty()) throw std::invalid_argument("local_winding_degree: empty mode list");
  for (const auto& k : jump.modes)
    if (k.size() != 2) throw std::invalid_argument("local_winding_degree: mode dimension mismatch");
  if (!(radius > 0)) throw std::invalid_argument("local_winding_degree: radius must be positive");
  if (samples < 8) throw std::invalid_argument("local_winding_degree: need at least 8 samples");

  const double c1 = to_double(jump.location[0]);
  const double c2 = to_double(jump.location[1]);
  std::vector<std::complex<double>> vals;
  vals.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    double theta = 2 * std::numbers::pi * s / samples;
    double p1 = c1 + radius * std::cos(theta);
    double p2 = c2 + radius * std::sin(theta);
    std::complex<double> det(1.0, 0.0);
    for (const auto& k : jump.modes)
      det *= chiral_symbol2(static_cast<double>(k[0]) + p1, static_cast<double>(k[1]) + p2);
    vals.push_back(det);
  }
  return detail::phase_winding(vals, 1e-9);
}

struct FamilyIndexReport {
  int n = 2;
  int K = 1;
  double radius = 0.1;
  int samples = 64;
  std::vector<JumpPoint> jump_points;
  std::vector<long long> local_degrees;
  long long total_c1 = 0;
  std::string convention = "counterclockwise loops, dc1^dc2 orientation";
};

inline FamilyIndexReport family_index_report(int n, int K, double radius, int samples) {
  FamilyIndexReport rep;
  rep.n = n;
  rep.K = K;
  rep.radius = radius;
  rep.samples = samples;
  rep.jump_points = kernel_jump_loci(n, K);
  for (const auto& jp : rep.jump_points) {
    long long deg = local_winding_degree(jp, radius, samples);
    rep.local_degrees.push_back(deg);
    rep.total_c1 += deg;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// W-construction at finite truncation.

struct WConstruction {
  int n = 2;
  int K = 1;
  int resolution = 1;
  bool offset_grid = false;
  std::vector<std::vector<long long>> w_modes;
  std::vector<std::array<double, 2>> grid;    // row-major (i1 * m + i2)
  std::vector<double> certificates;           // sigma_min of [D+ | W] per point
  std::vector<Eigen::MatrixXcd> fibers;       // orthonormal frame per point
  std::size_t fiber_dimension = 0;
};

namespace detail {

inline std::size_t mode_count(int n, int K) {
  std::size_t modes = 1;
  for (int j = 0; j < n; ++j) modes *= static_cast<std::size_t>(2 * K + 1);
  return modes;
}

inline std::size_t mode_offset2(long long k1, long long k2, int K) {
  return static_cast<std::size_t>(k1 + K) * static_cast<std::size_t>(2 * K + 1) +
         static_cast<std::size_t>(k2 + K);
}

}  // namespace detail

// Builds the fibers (D+_c)^{-1}(W) over an m x m grid of the fundamental
// domain, with a surjectivity certificate sigma_min([D+ | W]) >= threshold at
// every grid point. Fails loudly when W is too small for the grid.
inline WConstruction build_w_construction(int n, int K, int resolution,
                                          const std::vector<std::vector<long long>>& w_modes,
                                          bool offset_grid = false,
                                          double certificate_threshold = 1e-8) {
  if (n != 2) throw std::invalid_argument("build_w_construction: only n = 2 is supported");
  detail::require_cutoff(K);
  if (resolution < 1) throw std::invalid_argument("build_w_construction: resolution must be >= 1");
  for (const auto& k : w_modes) {
    if (k.size() != 2) throw std::invalid_argument("build_w_construction: mode dimension mismatch");
    if (std::llabs(k[0]) > K || std::llabs(k[1]) > K)
      throw std::invalid_argument("build_w_construction: W mode outside the truncation window");
  }

  const std::size_t M = detail::mode_count(n, K);
  const std::size_t w = w_modes.size();
  WConstruction out;
  out.n = n;
  out.K = K;
  out.resolution = resolution;
  out.offset_grid = offset_grid;
  out.w_modes = w_modes;
  out.fiber_dimension = w;

  Eigen::MatrixXcd w_columns = Eigen::MatrixXcd::Zero(M, w);
  for (std::size_t i = 0; i < w; ++i)
    w_columns(detail::mode_offset2(w_modes[i][0], w_modes[i][1], K), i) = 1.0;

  const double shift = offset_grid ? 0.5 : 0.0;
  for (int i1 = 0; i1 < resolution; ++i1) {
    for (int i2 = 0; i2 < resolution; ++i2) {
      const double c1 = (i1 + shift) / resolution;
      const double c2 = (i2 + shift) / resolution;
      out.grid.push_back({c1, c2});

      Eigen::MatrixXcd dplus = Eigen::MatrixXcd::Zero(M, M);
      for (long long k1 = -K; k1 <= K; ++k1)
        for (long long k2 = -K; k2 <= K; ++k2) {
          std::size_t p = detail::mode_offset2(k1, k2, K);
          dplus(p, p) = chiral_symbol2(static_cast<double>(k1) + c1,
                                       static_cast<double>(k2) + c2);
        }

      Eigen::MatrixXcd augmented(M, M + w);
      augmented << dplus, w_columns;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(augmented);
      double sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
      out.certificates.push_back(sigma_min);
      if (sigma_min < certificate_threshold) {
        std::ostringstream msg;
        msg << "build_w_construction: surjectivity certificate failed at c = (" << c1 << ", "
            << c2 << "), sigma_min = " << sigma_min << " < " << certificate_threshold
            << "; enlarge W";
        throw std::runtime_error(msg.str());
      }

      // fiber = ker((I - P_W) D+): strike the W rows, take the kernel
      Eigen::MatrixXcd reduced = dplus;
      for (std::size_t i = 0; i < w; ++i)
        reduced.row(detail::mode_offset2(w_modes[i][0], w_modes[i][1], K)).setZero();
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(reduced);
      lu.setThreshold(certificate_threshold);
      if (lu.dimensionOfKernel() != static_cast<Eigen::Index>(w))
        throw std::logic_error("build_w_construction: fiber dimension drifted across the grid");
      Eigen::MatrixXcd frame(M, 0);
      if (w > 0) {
        Eigen::MatrixXcd kernel = lu.kernel();
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(kernel);
        frame = qr.householderQ() * Eigen::MatrixXcd::Identity(M, kernel.cols());
      }
      out.fibers.push_back(frame);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plaquette Chern number from frames over a closed 2-parameter grid.

inline long long fhs_chern_number(const std::vector<std::vector<Eigen::MatrixXcd>>& frames,
                                  double overlap_tol = 1e-8) {
  const std::size_t m1 = frames.size();
  if (m1 < 2) throw std::invalid_argument("fhs_chern_number: need at least a 2 x 2 grid");
  const std::size_t m2 = frames.front().size();
  if (m2 < 2) throw std::invalid_argument("fhs_chern_number: need at least a 2 x 2 grid");
  const auto d = frames[0][0].rows();
  const auto r = frames[0][0].cols();
  for (const auto& row : frames) {
    if (row.size() != m2) throw std::invalid_argument("fhs_chern_number: ragged grid");
    for (const auto& f : row)
      if (f.rows() != d || f.cols() != r)
        throw std::invalid_argument("fhs_chern_number: inconsistent frame shape");
  }

  auto link = [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
    std::complex<double> det = (frames[i1][j1].adjoint() * frames[i2][j2]).determinant();
    if (std::abs(det) <= overlap_tol)
      throw std::runtime_error("fhs_chern_number: overlap determinant below threshold (grid too coarse)");
    return det / std::abs(det);
  };

  double total = 0;
  for (std::size_t i = 0; i < m1; ++i) {
    for (std::size_t j = 0; j < m2; ++j) {
      std::size_t ip = (i + 1) % m1, jp = (j + 1) % m2;
      std::complex<double> plaq =
          link(i, j, ip, j) * link(ip, j, ip, jp) * link(ip, jp, i, jp) * link(i, jp, i, j);
      total += std::arg(plaq);
    }
  }
  double chern = total / (2 * std::numbers::pi);
  long long c = std::llround(chern);
  if (std::abs(chern - static_cast<double>(c)) > 1e-6)
    throw std::runtime_error("fhs_chern_number: plaquette sum is not an integer");
  return c;
}

// Gapped two-band test family over the 2-torus of angles.
inline Eigen::Matrix2cd two_band_hamiltonian(double m0, double c1, double c2) {
  const std::complex<double> I(0, 1);
  Eigen::Matrix2cd h;
  double hx = std::sin(c1), hy = std::sin(c2), hz = m0 + std::cos(c1) + std::cos(c2);
  h << hz, hx - I * hy, hx + I * hy, -hz;
  return h;
}

inline std::vector<std::vector<Eigen::MatrixXcd>> two_band_lower_frames(double m0,
                                                                        int resolution) {
  if (resolution < 2) throw std::invalid_argument("two_band_lower_frames: resolution must be >= 2");
  std::vector<std::vector<Eigen::MatrixXcd>> frames(resolution);
  for (int i = 0; i < resolution; ++i) {
    frames[i].reserve(resolution);
    for (int j = 0; j < resolution; ++j) {
      double c1 = 2 * std::numbers::pi * i / resolution;
      double c2 = 2 * std::numbers::pi * j / resolution;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(two_band_hamiltonian(m0, c1, c2));
      if (es.eigenvalues()(1) - es.eigenvalues()(0) < 1e-9)
        throw std::runtime_error("two_band_lower_frames: spectral gap closed on the grid");
      frames[i].push_back(es.eigenvectors().col(0));
    }
  }
  return frames;
}

}  // namespace diracfam
