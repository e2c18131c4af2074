#pragma once

#include <cstddef>
#include <vector>

#include "hmt/grid.hpp"

namespace hmt::rearrange {

/// Nonincreasing rearrangement f* represented as a finite step function on
/// (0, infinity): f*(t) = values[k] for t in (breakpoints[k-1], breakpoints[k]],
/// with the implicit breakpoints[-1] = 0, and f* = 0 past the last breakpoint.
/// The zero function is the empty profile.
struct StepProfile {
  std::vector<double> breakpoints; // strictly increasing, positive
  std::vector<double> values;      // nonincreasing, nonnegative

  bool empty() const { return values.empty(); }
  std::size_t steps() const { return values.size(); }
  double total_measure() const { return breakpoints.empty() ? 0.0 : breakpoints.back(); }

  /// f*(t); 0 for t past the support, values[0] for t <= first breakpoint.
  double eval(double t) const;
  /// Measure of {t : f*(t) > lambda}.
  double distribution(double lambda) const;

  void validate() const; // throws if invariants are broken
};

/// Builds a step profile from raw magnitudes, each of weight cell_volume.
/// Zeros are dropped; equal adjacent values are coalesced.
StepProfile profile_from_magnitudes(std::vector<double> mags, double cell_volume);

/// Sorting permutation realizing |f| = f* on ranked cells of equal volume.
struct TransportMap {
  std::vector<std::size_t> rank; // rank[cell] in 0..M-1, descending |f|, ties by index
  double cell_volume = 0.0;
};

StepProfile rearrangement(const GridFunction& f);
double distribution_function(const GridFunction& f, double lambda);

/// L^{p,1} norm of a profile: sum_k v_k * p * (t_k^{1/p} - t_{k-1}^{1/p}).
double lorentz_p1_norm(const StepProfile& prof, double p);
/// L^{p,inf} norm: max_k v_k * t_k^{1/p}.
double lorentz_weak_norm(const StepProfile& prof, double p);

TransportMap transport_map(const GridFunction& f);

} // namespace hmt::rearrange
