#pragma once

#include <cstddef>
#include <vector>

#include "hmt/grid.hpp"

namespace hmt::maximal {

/// Radii used for the sup over r in the centered maximal operator.
struct RadiusSet {
  std::vector<double> radii; // sorted, positive

  /// All distinct wrapped lattice distances up to L/2, capped at `cap` values.
  static RadiusSet lattice_defaults(const GridFunction& grid_like, std::size_t cap = 512);
};

/// Centered L^q maximal value at one grid cell: max over radii of the q-mean
/// of |f| over the discrete ball (cell centers within r, periodic metric),
/// normalized by the continuum ball volume w_n r^n.
double centered_maximal(const GridFunction& f, double q, std::size_t x_cell,
                        const RadiusSet& radii);

/// || f(x + 2^{-j} y) / (1+|y|)^s ||_{L^{n/s,inf}} over the y-grid with box
/// side 2^j L, so the shifted lattice retraces f's cells exactly.
double shifted_weighted_weak_norm(const GridFunction& f, std::size_t x_cell, int j,
                                  double s);

/// shifted_weighted_weak_norm / centered_maximal, 0/0 resolved to 0.
/// Requires q > n/s (the hypothesis of the pointwise bound).
double lemma_ratio(const GridFunction& f, std::size_t x_cell, int j, double s, double q,
                   const RadiusSet& radii);

} // namespace hmt::maximal
