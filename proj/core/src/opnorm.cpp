#include "hmt/opnorm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace hmt::opnorm {

using std::numbers::pi;

namespace {

GridFunction random_band_limited(const GridFunction& like, std::mt19937_64& rng) {
  GridFunction fhat(like.dim(), like.box_side(), like.samples_per_dim());
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double cutoff = like.samples_per_dim() / (4.0 * like.box_side()); // Nyquist margin
  for (std::size_t i = 0; i < fhat.size(); ++i)
    if (fhat.freq_norm(i) <= cutoff) fhat[i] = cplx(gauss(rng), gauss(rng));
  return spectral::inverse_fourier(fhat);
}

GridFunction modulated_gaussian(const GridFunction& like, const double* xi0,
                                double width) {
  GridFunction f(like.dim(), like.box_side(), like.samples_per_dim());
  double x[3];
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.point(i, x);
    double r2 = 0, phase = 0;
    for (int d = 0; d < f.dim(); ++d) {
      r2 += x[d] * x[d];
      phase += x[d] * xi0[d];
    }
    f[i] = std::exp(-pi * r2 / (width * width)) *
           std::exp(cplx(0.0, 2.0 * pi * phase));
  }
  return f;
}

// max_i |sigma_i| extracted by power iteration on the diagonal operator
// |sigma|^2, accelerated by repeated squaring of the iterate; standard for a
// diagonal spectrum, converges in ~60 doublings regardless of eigenvalue gaps.
double power_iteration_sup(const GridFunction& sigma) {
  std::vector<double> v(sigma.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double m = std::abs(sigma[i]);
    v[i] = m * m;
  }
  double estimate = 0.0;
  for (int iter = 0; iter < 64; ++iter) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, x);
    if (vmax == 0.0) return 0.0;
    // Rayleigh-type estimate of the top eigenvalue of |sigma|^2
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      double w = v[i] / vmax;
      double m = std::abs(sigma[i]);
      num += w * m * m;
      den += w;
    }
    double next = num / den;
    if (iter > 4 && std::abs(next - estimate) <= 1e-14 * next) {
      estimate = next;
      break;
    }
    estimate = next;
    for (auto& x : v) {
      x = (x / vmax);
      x *= x;
    }
  }
  return std::sqrt(estimate);
}

} // namespace

OpNormEstimate empirical_opnorm(const symbols::SymbolSpec& spec, double p, int trials,
                                std::uint64_t seed, const OperatorGrid& grid) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("empirical_opnorm: p must lie in (1, inf)");
  if (trials < 1) throw std::invalid_argument("empirical_opnorm: trials must be >= 1");
  if (spec.kind == symbols::SymbolKind::PowerType)
    throw std::runtime_error(
        "empirical_opnorm: power_type symbols are unbounded at their centers; "
        "no finite operator norm to estimate");
  spec.validate();

  GridFunction like(spec.dim, grid.box_side, grid.samples_per_dim);
  GridFunction sigma = symbol_samples(spec, like);

  OpNormEstimate est;
  est.p = p;
  est.trials = trials;
  est.seed = seed;

  auto consider = [&](const GridFunction& f, const std::string& witness) {
    double den = f.lp_norm(p);
    if (den == 0.0) return;
    double ratio = spectral::apply_multiplier(sigma, f).lp_norm(p) / den;
    if (ratio > est.lower_bound) {
      est.lower_bound = ratio;
      est.witness = witness;
    }
  };

  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t)
    consider(random_band_limited(like, rng), "band_limited#" + std::to_string(t));

  // frequency-concentrated trials at the dyadic centers 2^k a_k
  if (spec.kind == symbols::SymbolKind::LogType ||
      spec.kind == symbols::SymbolKind::IteratedLog) {
    auto fam = spectral::default_partition(grid.box_side, grid.samples_per_dim);
    for (int k = fam.j_min; k <= fam.j_max; ++k) {
      auto a = spec.centers.center(k, spec.dim);
      double xi0[3] = {0, 0, 0};
      for (int d = 0; d < spec.dim; ++d)
        xi0[d] = std::ldexp(a[static_cast<std::size_t>(d)], k);
      for (double width : {1.0, 4.0})
        consider(modulated_gaussian(like, xi0, width),
                 "modulated_gaussian@j=" + std::to_string(k));
    }
  }

  if (p == 2.0) {
    double s = power_iteration_sup(sigma);
    if (s > est.lower_bound) {
      est.lower_bound = s;
      est.witness = "power_iteration";
    }
  }
  return est;
}

bool in_theorem_region(double p, double s, int n) {
  if (!(p > 1.0) || !std::isfinite(p)) return false;
  if (!(s > 0.0 && s < n)) return false;
  return std::abs(1.0 / p - 0.5) < s / n;
}

std::string theorem_region_message(double p, double s, int n) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "required |1/p - 1/2| < s/n: |1/%g - 1/2| = %g, s/n = %g", p,
                std::abs(1.0 / p - 0.5), s / n);
  return buf;
}

TheoremBoundCheck theorem_bound_check(const symbols::SymbolSpec& spec, double p, double s,
                                      const spectral::LittlewoodPaleyFamily& fam,
                                      const OperatorGrid& op_grid,
                                      const hormander::PieceGrid& piece_grid) {
  if (!in_theorem_region(p, s, spec.dim))
    throw std::invalid_argument("theorem_bound_check: " +
                                theorem_region_message(p, s, spec.dim));
  TheoremBoundCheck out;
  out.condition = hormander::lorentz_condition(spec, s, fam, piece_grid);
  out.estimate = empirical_opnorm(spec, p, 40, 1234, op_grid);
  out.estimate.K = out.condition.K;
  out.c_emp = out.condition.K > 0 ? out.estimate.lower_bound / out.condition.K
                                  : std::numeric_limits<double>::infinity();
  out.passed = std::isfinite(out.c_emp) && !out.condition.divergent;
  return out;
}

std::string OpNormEstimate::to_json_text() const {
  nlohmann::json j;
  j["p"] = p;
  j["lower_bound"] = lower_bound;
  j["witness"] = witness;
  j["trials"] = trials;
  j["seed"] = seed;
  if (K > 0) j["K"] = K;
  return j.dump(2);
}

} // namespace hmt::opnorm
