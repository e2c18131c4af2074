#include "hmt/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmt/hormander.hpp"
#include "hmt/rearrange.hpp"

namespace hmt::maximal {
namespace {

// Periodic displacement of axis indices a - b, wrapped to [-N/2, N/2).
int wrap_delta(int a, int b, int n) {
  int d = (a - b) % n;
  if (d < 0) d += n;
  if (d >= n / 2) d -= n;
  return d;
}

double wrapped_distance(const GridFunction& f, std::size_t a, std::size_t b) {
  int ia[3], ib[3];
  f.unflatten(a, ia);
  f.unflatten(b, ib);
  const double h = f.box_side() / f.samples_per_dim();
  double s = 0;
  for (int d = 0; d < f.dim(); ++d) {
    double dx = wrap_delta(ia[d], ib[d], f.samples_per_dim()) * h;
    s += dx * dx;
  }
  return std::sqrt(s);
}

} // namespace

RadiusSet RadiusSet::lattice_defaults(const GridFunction& g, std::size_t cap) {
  std::vector<double> dists;
  dists.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double d = wrapped_distance(g, i, 0);
    if (d > 0 && d <= g.box_side() / 2.0) dists.push_back(d);
  }
  std::sort(dists.begin(), dists.end());
  dists.erase(std::unique(dists.begin(), dists.end()), dists.end());
  RadiusSet rs;
  if (dists.size() <= cap) {
    rs.radii = std::move(dists);
  } else {
    rs.radii.reserve(cap);
    for (std::size_t k = 0; k < cap; ++k)
      rs.radii.push_back(dists[k * dists.size() / cap]);
    if (rs.radii.back() != dists.back()) rs.radii.push_back(dists.back());
  }
  if (rs.radii.empty()) throw std::invalid_argument("empty radius set");
  return rs;
}

double centered_maximal(const GridFunction& f, double q, std::size_t x_cell,
                        const RadiusSet& radii) {
  if (!(q >= 1.0)) throw std::invalid_argument("centered_maximal: q must be >= 1");
  if (radii.radii.empty()) throw std::invalid_argument("centered_maximal: empty radii");
  f.require_finite();
  const double wn = hormander::unit_ball_volume(f.dim());
  const std::size_t nr = radii.radii.size();
  // bucket |f|^q mass by the smallest radius containing each cell
  std::vector<double> bucket(nr + 1, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double d = wrapped_distance(f, i, x_cell);
    auto it = std::lower_bound(radii.radii.begin(), radii.radii.end(), d);
    bucket[static_cast<std::size_t>(it - radii.radii.begin())] +=
        std::pow(std::abs(f[i]), q);
  }
  double best = 0.0, acc = 0.0;
  for (std::size_t k = 0; k < nr; ++k) {
    acc += bucket[k];
    double r = radii.radii[k];
    double mean = acc * f.cell_volume() / (wn * std::pow(r, f.dim()));
    best = std::max(best, std::pow(mean, 1.0 / q));
  }
  return best;
}

double shifted_weighted_weak_norm(const GridFunction& f, std::size_t x_cell, int j,
                                  double s) {
  const int n = f.dim();
  if (!(s > 0.0 && s < n))
    throw std::invalid_argument("shifted_weighted_weak_norm: s must lie in (0, n)");
  if (std::abs(j) > 40)
    throw std::invalid_argument("shifted_weighted_weak_norm: |j| too large");
  f.require_finite();
  const int N = f.samples_per_dim();
  const double Ly = std::ldexp(f.box_side(), j); // y-box so 2^{-j} y covers f's box
  const double hy = Ly / N;
  const double y_cell_vol = std::pow(hy, n);
  int ix[3];
  f.unflatten(x_cell, ix);

  std::vector<double> mags(f.size());
  int iy[3], src[3];
  double y[3];
  for (std::size_t m = 0; m < f.size(); ++m) {
    // y lattice point and the f-cell it lands on: x + 2^{-j} y is lattice
    // aligned because 2^{-j} hy equals f's cell width.
    std::size_t mm = m;
    for (int d = n - 1; d >= 0; --d) {
      iy[d] = static_cast<int>(mm % static_cast<std::size_t>(N));
      mm /= static_cast<std::size_t>(N);
    }
    double ynorm2 = 0;
    for (int d = 0; d < n; ++d) {
      y[d] = -Ly / 2.0 + iy[d] * hy;
      ynorm2 += y[d] * y[d];
      src[d] = ix[d] + iy[d] - N / 2; // wrapped by flatten
    }
    double w = std::pow(1.0 + std::sqrt(ynorm2), -s);
    mags[m] = std::abs(f[f.flatten(src)]) * w;
  }
  auto prof = rearrange::profile_from_magnitudes(std::move(mags), y_cell_vol);
  return rearrange::lorentz_weak_norm(prof, n / s);
}

double lemma_ratio(const GridFunction& f, std::size_t x_cell, int j, double s, double q,
                   const RadiusSet& radii) {
  const int n = f.dim();
  if (!(q > n / s))
    throw std::invalid_argument("lemma_ratio: hypothesis q > n/s violated");
  double weak = shifted_weighted_weak_norm(f, x_cell, j, s);
  double maximal = centered_maximal(f, q, x_cell, radii);
  if (maximal == 0.0) {
    if (weak > 1e-14)
      throw std::logic_error("lemma_ratio: zero maximal value with nonzero weak norm");
    return 0.0;
  }
  return weak / maximal;
}

} // namespace hmt::maximal
