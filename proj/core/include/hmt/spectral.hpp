#pragma once

#include <complex>
#include <functional>

#include "hmt/grid.hpp"

namespace hmt::spectral {

/// Forward transform with the e^{-2 pi i x.xi} convention: output bin carries
/// an approximation of the continuum integral (DFT scaled by cell_volume, with
/// the phase correction for the box starting at -L/2).
GridFunction forward_fourier(const GridFunction& f);
GridFunction inverse_fourier(const GridFunction& fhat);

/// (I - Laplacian)^{w/2}: multiplies fhat by (1 + 4 pi^2 |xi|^2)^{w/2},
/// principal branch. Real w smooths/roughens, imaginary w is unimodular.
GridFunction bessel_potential(const GridFunction& f, std::complex<double> w);

/// T_sigma: pointwise product in frequency, then inverse transform.
/// sigma is given as frequency-domain samples on the same grid.
GridFunction apply_multiplier(const GridFunction& sigma, const GridFunction& f);

/// Smooth cutoff eta(r): 1 for r <= 1, 0 for r >= 2, strictly decreasing in
/// between; eta(r) = int_r^2 b / int_1^2 b with b(u) = exp(-1/((u-1)(2-u))).
double eta(double r);

/// Dyadic partition of unity. psi_hat is radial, supported in (1/2, 2), and
/// sum_j psi_hat(2^{-j} r) telescopes to 1 on [2^{j_min}, 2^{j_max}].
struct LittlewoodPaleyFamily {
  int j_min = 0;
  int j_max = 0;

  double psi_hat(double r) const;   // eta(r) - eta(2r)
  double theta_hat(double r) const; // psi_hat(r/2) + psi_hat(r) + psi_hat(2r)
  double phi_hat(double r) const;   // eta(r/2) - eta(4r), == 1 on supp psi_hat

  /// sum over j in [j_min, j_max] of psi_hat(2^{-j} r); telescopes exactly.
  double partition_sum(double r) const;

  bool contains(int j) const { return j >= j_min && j <= j_max; }
};

struct configuration_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

LittlewoodPaleyFamily build_partition(int j_min, int j_max);

/// Widest dyadic window resolved by a grid: 2^{j_min} >= 4/L, 2^{j_max} <= N/(4L).
LittlewoodPaleyFamily default_partition(double box_side, int samples_per_dim);

enum class PieceKind { Psi, Theta };

/// Littlewood-Paley piece Delta_j f (or the fattened Theta version).
GridFunction lp_piece(const GridFunction& f, int j, const LittlewoodPaleyFamily& fam,
                      PieceKind which = PieceKind::Psi);

/// Frequency-domain samples of a radial multiplier m(|xi|) on f's grid.
GridFunction sample_radial_multiplier(const GridFunction& grid_like,
                                      const std::function<double(double)>& m);

} // namespace hmt::spectral
