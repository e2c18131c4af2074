#include "hmt/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hmt::rearrange {

double StepProfile::eval(double t) const {
  if (empty() || t > breakpoints.back()) return 0.0;
  // first k with breakpoints[k] >= t; left-continuity: step k covers (t_{k-1}, t_k]
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
  return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

double StepProfile::distribution(double lambda) const {
  // values nonincreasing: measure above lambda is the breakpoint of the last
  // step whose value exceeds lambda.
  double m = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] > lambda) m = breakpoints[k];
  return m;
}

void StepProfile::validate() const {
  if (breakpoints.size() != values.size())
    throw std::invalid_argument("step profile: size mismatch");
  double prev_t = 0.0;
  double prev_v = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(breakpoints[k] > prev_t) || !std::isfinite(breakpoints[k]))
      throw std::invalid_argument("step profile: breakpoints not strictly increasing");
    if (!(values[k] >= 0) || values[k] > prev_v || !std::isfinite(values[k]))
      throw std::invalid_argument("step profile: values not nonincreasing/nonnegative");
    prev_t = breakpoints[k];
    prev_v = values[k];
  }
}

StepProfile profile_from_magnitudes(std::vector<double> mags, double cell_volume) {
  for (double m : mags)
    if (!std::isfinite(m)) throw std::invalid_argument("non-finite sample");
  std::erase_if(mags, [](double m) { return m == 0.0; });
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  StepProfile prof;
  std::size_t i = 0;
  while (i < mags.size()) {
    std::size_t j = i;
    while (j < mags.size() && mags[j] == mags[i]) ++j;
    prof.breakpoints.push_back(static_cast<double>(j) * cell_volume);
    prof.values.push_back(mags[i]);
    i = j;
  }
  return prof;
}

StepProfile rearrangement(const GridFunction& f) {
  f.require_finite();
  std::vector<double> mags(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f[i]);
  return profile_from_magnitudes(std::move(mags), f.cell_volume());
}

double distribution_function(const GridFunction& f, double lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  f.require_finite();
  std::size_t count = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) > lambda) ++count;
  return static_cast<double>(count) * f.cell_volume();
}

double lorentz_p1_norm(const StepProfile& prof, double p) {
  if (!(p > 1)) throw std::invalid_argument("lorentz_p1_norm requires p > 1");
  double s = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < prof.steps(); ++k) {
    double tk = std::pow(prof.breakpoints[k], 1.0 / p);
    s += prof.values[k] * p * (tk - prev);
    prev = tk;
  }
  return s;
}

double lorentz_weak_norm(const StepProfile& prof, double p) {
  if (!(p > 1)) throw std::invalid_argument("lorentz_weak_norm requires p > 1");
  double m = 0.0;
  for (std::size_t k = 0; k < prof.steps(); ++k)
    m = std::max(m, prof.values[k] * std::pow(prof.breakpoints[k], 1.0 / p));
  return m;
}

TransportMap transport_map(const GridFunction& f) {
  f.require_finite();
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double ma = std::abs(f[a]), mb = std::abs(f[b]);
    if (ma != mb) return ma > mb;
    return a < b; // ties by cell index
  });
  TransportMap tm;
  tm.cell_volume = f.cell_volume();
  tm.rank.resize(f.size());
  for (std::size_t r = 0; r < order.size(); ++r) tm.rank[order[r]] = r;
  return tm;
}

} // namespace hmt::rearrange
