#include "hmt/spectral.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace hmt::spectral {
namespace {

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Executes an n-dimensional c2c transform in place. FFTW plan creation is not
// thread-safe; execution is.
void run_fft(std::vector<cplx>& buf, int dim, int n, int sign) {
  std::array<int, 3> dims{};
  for (int d = 0; d < dim; ++d) dims[static_cast<std::size_t>(d)] = n;
  auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft(dim, dims.data(), ptr, ptr, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
}

// Phase (-1)^{sum of axis indices}: accounts for the box starting at -L/2 on
// both sides of the transform. Parity of the DFT index equals parity of the
// signed frequency index since N is even.
void apply_checkerboard(GridFunction& g) {
  int idx[3];
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    int s = 0;
    for (int d = 0; d < g.dim(); ++d) s += idx[d];
    if (s & 1) g[i] = -g[i];
  }
}

} // namespace

GridFunction forward_fourier(const GridFunction& f) {
  GridFunction out = f;
  run_fft(out.data(), f.dim(), f.samples_per_dim(), FFTW_FORWARD);
  apply_checkerboard(out);
  const double scale = f.cell_volume();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale;
  return out;
}

GridFunction inverse_fourier(const GridFunction& fhat) {
  GridFunction out = fhat;
  apply_checkerboard(out);
  run_fft(out.data(), fhat.dim(), fhat.samples_per_dim(), FFTW_BACKWARD);
  const double scale = 1.0 / std::pow(fhat.box_side(), fhat.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale;
  return out;
}

GridFunction bessel_potential(const GridFunction& f, std::complex<double> w) {
  GridFunction fhat = forward_fourier(f);
  const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  for (std::size_t i = 0; i < fhat.size(); ++i) {
    double xi = fhat.freq_norm(i);
    double base = 1.0 + four_pi_sq * xi * xi; // >= 1, principal branch unambiguous
    fhat[i] *= std::exp(0.5 * w * std::log(base));
  }
  return inverse_fourier(fhat);
}

GridFunction apply_multiplier(const GridFunction& sigma, const GridFunction& f) {
  if (!sigma.same_grid(f)) throw grid_mismatch_error("multiplier grid mismatch");
  GridFunction fhat = forward_fourier(f);
  for (std::size_t i = 0; i < fhat.size(); ++i) fhat[i] *= sigma[i];
  return inverse_fourier(fhat);
}

namespace {

double bump_b(double u) {
  if (u <= 1.0 || u >= 2.0) return 0.0;
  return std::exp(-1.0 / ((u - 1.0) * (2.0 - u)));
}

// Cumulative table of int_r^2 b on [1,2], Hermite-interpolated. The table is
// fine enough (h = 1e-5, quartic local error) that interpolation error is far
// below 1e-12.
struct EtaTable {
  static constexpr int kIntervals = 100000;
  std::vector<double> cum; // cum[i] = int_{r_i}^{2} b, r_i = 1 + i*h
  double h;
  double total;

  EtaTable() : h(1.0 / kIntervals) {
    // 8-point Gauss-Legendre nodes/weights on [-1,1]
    static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                                 -0.5255324099163290, -0.1834346424956498,
                                 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                                 0.3137066458778873, 0.3626837833783620,
                                 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    std::vector<double> seg(kIntervals);
    for (int i = 0; i < kIntervals; ++i) {
      double a = 1.0 + i * h, b = a + h;
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double s = 0;
      for (int q = 0; q < 8; ++q) s += gw[q] * bump_b(mid + half * gx[q]);
      seg[static_cast<std::size_t>(i)] = s * half;
    }
    cum.assign(kIntervals + 1, 0.0);
    for (int i = kIntervals - 1; i >= 0; --i)
      cum[static_cast<std::size_t>(i)] =
          cum[static_cast<std::size_t>(i) + 1] + seg[static_cast<std::size_t>(i)];
    total = cum[0];
  }

  double eval(double r) const {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    double u = (r - 1.0) / h;
    auto i = static_cast<std::size_t>(u);
    if (i >= static_cast<std::size_t>(kIntervals)) i = kIntervals - 1;
    double t = u - static_cast<double>(i);
    double r0 = 1.0 + static_cast<double>(i) * h;
    double f0 = cum[i], f1 = cum[i + 1];
    double d0 = -bump_b(r0), d1 = -bump_b(r0 + h); // d/dr int_r^2 b = -b(r)
    // cubic Hermite
    double t2 = t * t, t3 = t2 * t;
    double val = (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 +
                 (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
    return val / total;
  }
};

const EtaTable& eta_table() {
  static const EtaTable table;
  return table;
}

} // namespace

double eta(double r) { return eta_table().eval(r); }

double LittlewoodPaleyFamily::psi_hat(double r) const { return eta(r) - eta(2.0 * r); }

double LittlewoodPaleyFamily::theta_hat(double r) const {
  return psi_hat(0.5 * r) + psi_hat(r) + psi_hat(2.0 * r);
}

double LittlewoodPaleyFamily::phi_hat(double r) const {
  return eta(0.5 * r) - eta(4.0 * r);
}

double LittlewoodPaleyFamily::partition_sum(double r) const {
  // sum_j [eta(2^{-j} r) - eta(2^{-j+1} r)] = eta(2^{-j_max} r) - eta(2^{-j_min+1} r)
  return eta(std::ldexp(r, -j_max)) - eta(std::ldexp(r, -j_min + 1));
}

LittlewoodPaleyFamily build_partition(int j_min, int j_max) {
  if (j_min > j_max) throw configuration_error("build_partition: j_min must be <= j_max");
  LittlewoodPaleyFamily fam;
  fam.j_min = j_min;
  fam.j_max = j_max;
  return fam;
}

LittlewoodPaleyFamily default_partition(double box_side, int samples_per_dim) {
  int j_min = static_cast<int>(std::ceil(std::log2(4.0 / box_side)));
  int j_max = static_cast<int>(std::floor(std::log2(samples_per_dim / (4.0 * box_side))));
  if (j_min >= j_max)
    throw configuration_error("grid too small for any dyadic window");
  return build_partition(j_min, j_max);
}

GridFunction lp_piece(const GridFunction& f, int j, const LittlewoodPaleyFamily& fam,
                      PieceKind which) {
  if (!fam.contains(j)) throw std::invalid_argument("lp_piece: j outside j_range");
  const double scale = std::ldexp(1.0, -j);
  GridFunction sigma = sample_radial_multiplier(f, [&](double r) {
    double u = scale * r;
    return which == PieceKind::Psi ? fam.psi_hat(u) : fam.theta_hat(u);
  });
  return apply_multiplier(sigma, f);
}

GridFunction sample_radial_multiplier(const GridFunction& grid_like,
                                      const std::function<double(double)>& m) {
  GridFunction sigma(grid_like.dim(), grid_like.box_side(), grid_like.samples_per_dim());
  for (std::size_t i = 0; i < sigma.size(); ++i)
    sigma[i] = m(sigma.freq_norm(i));
  return sigma;
}

} // namespace hmt::spectral
