#include "hmt/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace hmt::symbols {
namespace {

using std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d4a2ca9da2ba5fULL;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double norm(const double* x, int dim) {
  double s = 0;
  for (int d = 0; d < dim; ++d) s += x[d] * x[d];
  return std::sqrt(s);
}

// e, e^e, e^{e^e}; higher towers overflow double.
double exp_tower(int ell) {
  double t = 1.0;
  for (int i = 0; i < ell; ++i) t = std::exp(t);
  return t;
}

} // namespace

std::vector<double> CenterSchedule::center(int k, int dim) const {
  k += shift;
  std::vector<double> a(static_cast<std::size_t>(dim), 0.0);
  switch (preset) {
    case Preset::Fixed:
      if (!fixed_center.empty()) {
        if (static_cast<int>(fixed_center.size()) != dim)
          throw std::invalid_argument("fixed center has wrong dimension");
        return fixed_center;
      }
      a[0] = 1.0;
      return a;
    case Preset::Rotating: {
      if (dim == 1) {
        a[0] = (k % 2 == 0) ? 1.0 : -1.0;
        return a;
      }
      double angle = 2.0 * pi * static_cast<double>(((k % 16) + 16) % 16) / 16.0;
      a[0] = std::cos(angle);
      a[1] = std::sin(angle);
      return a;
    }
    case Preset::RandomSeeded: {
      std::uint64_t h = splitmix64(seed ^ (0x5badc0deULL + static_cast<std::uint64_t>(
                                                               static_cast<std::int64_t>(k))));
      double radius = 0.6 + 1.2 * unit_double(h); // inside (1/2, 2)
      if (dim == 1) {
        a[0] = (splitmix64(h) & 1) ? radius : -radius;
        return a;
      }
      double u[3] = {0, 0, 0};
      double nn = 0;
      std::uint64_t g = h;
      for (int d = 0; d < dim; ++d) {
        g = splitmix64(g);
        u[d] = 2.0 * unit_double(g) - 1.0;
        nn += u[d] * u[d];
      }
      if (nn == 0) { u[0] = 1.0; nn = 1.0; }
      nn = std::sqrt(nn);
      for (int d = 0; d < dim; ++d) a[static_cast<std::size_t>(d)] = radius * u[d] / nn;
      return a;
    }
  }
  throw std::logic_error("unreachable");
}

void SymbolSpec::validate() const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("symbol dim must be 1..3");
  switch (kind) {
    case SymbolKind::PowerType:
    case SymbolKind::LogType:
      if (!(beta < 0)) throw std::invalid_argument("beta must be negative");
      break;
    case SymbolKind::IteratedLog:
      if (!(beta < 0)) throw std::invalid_argument("beta must be negative");
      if (ell < 1 || ell > 3)
        throw std::invalid_argument("ell must be in 1..3 (constant tower overflows past 3)");
      break;
    case SymbolKind::MikhlinRiesz:
      if (axis < 0 || axis >= dim) throw std::invalid_argument("riesz axis out of range");
      break;
    case SymbolKind::Custom:
      if (!custom) throw std::invalid_argument("custom symbol has no samples");
      break;
    case SymbolKind::Constant:
      break;
  }
}

SymbolSpec SymbolSpec::with_center_shift(int delta) const {
  SymbolSpec s = *this;
  s.centers.shift += delta;
  return s;
}

double annulus_bump(double r) {
  if (r <= 0.5 || r >= 2.0) return 0.0;
  // exp(-1/((r-1/2)(2-r))), peak at r = 5/4 where the product is 9/16
  return std::exp(-1.0 / ((r - 0.5) * (2.0 - r)) + 16.0 / 9.0);
}

double annulus_bump(const double* x, int dim) { return annulus_bump(norm(x, dim)); }

namespace {

// Singular factor of one dyadic term at rescaled point u with center a.
double singular_factor(const SymbolSpec& spec, const double* u,
                       const std::vector<double>& a) {
  double d = 0;
  for (int i = 0; i < spec.dim; ++i) {
    double t = u[i] - a[static_cast<std::size_t>(i)];
    d += t * t;
  }
  d = std::sqrt(d);
  switch (spec.kind) {
    case SymbolKind::PowerType:
      if (d == 0.0) return std::numeric_limits<double>::infinity();
      return std::pow(d, spec.beta);
    case SymbolKind::LogType: {
      if (d == 0.0) return 0.0; // log -> inf, beta < 0
      double arg = std::exp(1.0) * std::pow(4.0, spec.dim) / std::pow(d, spec.dim);
      return std::pow(std::log(arg), spec.beta);
    }
    case SymbolKind::IteratedLog: {
      if (d == 0.0) return 0.0;
      double v = std::pow(4.0, spec.dim) * exp_tower(spec.ell) / std::pow(d, spec.dim);
      for (int i = 0; i < spec.ell; ++i) v = std::log(v);
      return std::pow(v, spec.beta);
    }
    default:
      throw std::logic_error("singular_factor: not a scale-indexed kind");
  }
}

} // namespace

cplx eval_symbol(const SymbolSpec& spec, const double* xi) {
  switch (spec.kind) {
    case SymbolKind::Constant:
      return spec.constant;
    case SymbolKind::MikhlinRiesz: {
      double r = norm(xi, spec.dim);
      if (r == 0.0) return 0.0;
      return xi[spec.axis] / r;
    }
    case SymbolKind::Custom: {
      const GridFunction& g = *spec.custom;
      int idx[3] = {0, 0, 0};
      for (int d = 0; d < g.dim(); ++d) {
        // nearest frequency bin, clamped to the resolved range
        int k = static_cast<int>(std::lround(xi[d] * g.box_side()));
        k = std::clamp(k, -g.samples_per_dim() / 2, g.samples_per_dim() / 2 - 1);
        idx[d] = k;
      }
      return g[g.flatten(idx)];
    }
    default:
      break;
  }
  double r = norm(xi, spec.dim);
  if (r == 0.0) return 0.0; // every dyadic bump vanishes at the origin
  // only k with 2^{-k}|xi| in (1/2, 2) contribute
  int k0 = static_cast<int>(std::floor(std::log2(r)));
  double sum = 0.0;
  double u[3];
  for (int k = k0 - 1; k <= k0 + 2; ++k) {
    double sc = std::ldexp(1.0, -k);
    double ur = sc * r;
    if (ur <= 0.5 || ur >= 2.0) continue;
    for (int d = 0; d < spec.dim; ++d) u[d] = sc * xi[d];
    double b = annulus_bump(ur);
    if (b == 0.0) continue;
    sum += b * singular_factor(spec, u, spec.centers.center(k, spec.dim));
  }
  if (std::isinf(sum) && !spec.diagnostic_unbounded)
    throw std::domain_error("power_type symbol is unbounded at a center; "
                            "enable diagnostic_unbounded to evaluate anyway");
  return sum;
}

cplx eval_symbol(const SymbolSpec& spec, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != spec.dim)
    throw std::invalid_argument("eval_symbol: point dimension mismatch");
  return eval_symbol(spec, xi.data());
}

GridFunction localized_piece(const SymbolSpec& spec, int j,
                             const spectral::LittlewoodPaleyFamily& fam,
                             double box_side, int samples_per_dim) {
  spec.validate();
  if (!fam.contains(j)) throw std::invalid_argument("localized_piece: j outside j_range");
  SymbolSpec sampled = spec;
  sampled.diagnostic_unbounded = true; // singular grid hits are clipped below
  GridFunction g(spec.dim, box_side, samples_per_dim);
  const double scale = std::ldexp(1.0, j);
  double x[3], sx[3];
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, x);
    double r = norm(x, spec.dim);
    double psi = fam.psi_hat(r);
    if (psi == 0.0) continue;
    for (int d = 0; d < spec.dim; ++d) sx[d] = scale * x[d];
    cplx v = eval_symbol(sampled, sx);
    if (std::isinf(std::abs(v))) v = 0.0; // clip: grid sample at a singular center
    g[i] = psi * v;
  }
  return g;
}

GridFunction symbol_samples(const SymbolSpec& spec, const GridFunction& grid_like) {
  spec.validate();
  GridFunction sigma(grid_like.dim(), grid_like.box_side(), grid_like.samples_per_dim());
  double xi[3];
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    sigma.frequency(i, xi);
    sigma[i] = eval_symbol(spec, xi);
  }
  return sigma;
}

cplx finite_difference_derivative(const SymbolSpec& spec, std::vector<double> xi,
                                  std::vector<int> alpha, double h_rel) {
  for (int d = 0; d < spec.dim; ++d) {
    if (alpha[static_cast<std::size_t>(d)] > 0) {
      double h = h_rel * norm(xi.data(), spec.dim);
      if (h == 0.0) throw std::domain_error("derivative at the origin");
      --alpha[static_cast<std::size_t>(d)];
      std::vector<double> plus = xi, minus = xi;
      plus[static_cast<std::size_t>(d)] += h;
      minus[static_cast<std::size_t>(d)] -= h;
      return (finite_difference_derivative(spec, plus, alpha, h_rel) -
              finite_difference_derivative(spec, minus, alpha, h_rel)) /
             (2.0 * h);
    }
  }
  return eval_symbol(spec, xi);
}

namespace {

std::vector<std::vector<int>> multi_indices(int dim, int max_order) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(dim), 0);
  // enumerate all alpha with |alpha| <= max_order
  std::function<void(int, int)> rec = [&](int d, int budget) {
    if (d == dim) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      cur[static_cast<std::size_t>(d)] = v;
      rec(d + 1, budget - v);
    }
    cur[static_cast<std::size_t>(d)] = 0;
  };
  rec(0, max_order);
  return out;
}

std::vector<double> random_point(std::mt19937_64& rng, int dim, double r_min,
                                 double r_max) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double r = r_min * std::pow(r_max / r_min, unif(rng));
  std::vector<double> x(static_cast<std::size_t>(dim));
  double nn = 0;
  do {
    nn = 0;
    for (auto& v : x) {
      v = gauss(rng);
      nn += v * v;
    }
  } while (nn == 0);
  nn = std::sqrt(nn);
  for (auto& v : x) v *= r / nn;
  return x;
}

bool near_singular_center(const SymbolSpec& spec, const std::vector<double>& xi,
                          double tol) {
  if (spec.kind != SymbolKind::PowerType && spec.kind != SymbolKind::LogType &&
      spec.kind != SymbolKind::IteratedLog)
    return false;
  double r = norm(xi.data(), spec.dim);
  if (r == 0.0) return true;
  int k0 = static_cast<int>(std::floor(std::log2(r)));
  for (int k = k0 - 1; k <= k0 + 2; ++k) {
    auto a = spec.centers.center(k, spec.dim);
    double d = 0;
    double sc = std::ldexp(1.0, -k);
    for (int i = 0; i < spec.dim; ++i) {
      double t = sc * xi[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)];
      d += t * t;
    }
    if (std::sqrt(d) < tol) return true;
  }
  return false;
}

} // namespace

const MikhlinEntry* MikhlinReport::find(const std::vector<int>& alpha) const {
  for (const auto& e : entries)
    if (e.alpha == alpha) return &e;
  return nullptr;
}

MikhlinReport mikhlin_check(const SymbolSpec& spec, int alpha_max, int sample_count,
                            std::uint64_t seed, double r_min, double r_max) {
  spec.validate();
  MikhlinReport rep;
  for (const auto& alpha : multi_indices(spec.dim, alpha_max)) {
    int order = 0;
    for (int v : alpha) order += v;
    if (order == 0) continue;
    MikhlinEntry entry;
    entry.alpha = alpha;
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(order) * 7919);
    int taken = 0;
    while (taken < sample_count) {
      auto xi = random_point(rng, spec.dim, r_min, r_max);
      if (near_singular_center(spec, xi, 1e-3)) continue; // resample
      ++taken;
      double r = norm(xi.data(), spec.dim);
      double d1 = std::abs(finite_difference_derivative(spec, xi, alpha, 1e-4));
      double d2 = std::abs(finite_difference_derivative(spec, xi, alpha, 5e-5));
      double v = std::pow(r, order) * d1;
      if (v > entry.c_alpha) {
        entry.c_alpha = v;
        entry.richardson_rel = d1 == 0.0 ? 0.0 : std::abs(d1 - d2) / std::abs(d1);
      }
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

double mikhlin_sup_at_radius(const SymbolSpec& spec, const std::vector<int>& alpha,
                             double radius, int sample_count, std::uint64_t seed) {
  spec.validate();
  int order = 0;
  for (int v : alpha) order += v;
  std::mt19937_64 rng(seed);
  double sup = 0;
  int taken = 0;
  while (taken < sample_count) {
    auto xi = random_point(rng, spec.dim, radius, radius);
    if (near_singular_center(spec, xi, 1e-3)) continue;
    ++taken;
    double d = std::abs(finite_difference_derivative(spec, xi, alpha));
    sup = std::max(sup, std::pow(radius, order) * d);
  }
  return sup;
}

namespace {

using nlohmann::json;

SymbolKind kind_from_string(const std::string& s) {
  if (s == "constant") return SymbolKind::Constant;
  if (s == "mikhlin_riesz") return SymbolKind::MikhlinRiesz;
  if (s == "power_type") return SymbolKind::PowerType;
  if (s == "log_type") return SymbolKind::LogType;
  if (s == "iterated_log") return SymbolKind::IteratedLog;
  if (s == "custom") return SymbolKind::Custom;
  throw std::invalid_argument("unknown symbol kind: " + s);
}

std::string kind_to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Constant: return "constant";
    case SymbolKind::MikhlinRiesz: return "mikhlin_riesz";
    case SymbolKind::PowerType: return "power_type";
    case SymbolKind::LogType: return "log_type";
    case SymbolKind::IteratedLog: return "iterated_log";
    case SymbolKind::Custom: return "custom";
  }
  return "?";
}

} // namespace

SymbolSpec SymbolSpec::from_json_text(const std::string& text) {
  json j = json::parse(text);
  SymbolSpec spec;
  if (!j.contains("kind")) throw std::invalid_argument("missing field: kind");
  spec.kind = kind_from_string(j.at("kind").get<std::string>());
  spec.dim = j.value("dim", 2);
  if (j.contains("constant")) spec.constant = j.at("constant").get<double>();
  switch (spec.kind) {
    case SymbolKind::PowerType:
    case SymbolKind::LogType:
    case SymbolKind::IteratedLog:
      if (!j.contains("beta")) throw std::invalid_argument("missing field: beta");
      spec.beta = j.at("beta").get<double>();
      break;
    default:
      spec.beta = j.value("beta", spec.beta);
  }
  spec.ell = j.value("ell", 1);
  spec.axis = j.value("axis", 0);
  spec.diagnostic_unbounded = j.value("diagnostic_unbounded", false);
  if (j.contains("centers")) {
    const json& c = j.at("centers");
    std::string preset = c.value("preset", "fixed");
    if (preset == "fixed")
      spec.centers.preset = CenterSchedule::Preset::Fixed;
    else if (preset == "rotating")
      spec.centers.preset = CenterSchedule::Preset::Rotating;
    else if (preset == "random")
      spec.centers.preset = CenterSchedule::Preset::RandomSeeded;
    else
      throw std::invalid_argument("unknown centers preset: " + preset);
    spec.centers.seed = c.value("seed", std::uint64_t{0});
    if (c.contains("point"))
      spec.centers.fixed_center = c.at("point").get<std::vector<double>>();
  }
  spec.validate();
  return spec;
}

std::string SymbolSpec::to_json_text() const {
  json j;
  j["kind"] = kind_to_string(kind);
  j["dim"] = dim;
  if (kind == SymbolKind::Constant) j["constant"] = constant.real();
  if (kind == SymbolKind::PowerType || kind == SymbolKind::LogType ||
      kind == SymbolKind::IteratedLog)
    j["beta"] = beta;
  if (kind == SymbolKind::IteratedLog) j["ell"] = ell;
  if (kind == SymbolKind::MikhlinRiesz) j["axis"] = axis;
  json c;
  switch (centers.preset) {
    case CenterSchedule::Preset::Fixed: c["preset"] = "fixed"; break;
    case CenterSchedule::Preset::Rotating: c["preset"] = "rotating"; break;
    case CenterSchedule::Preset::RandomSeeded: c["preset"] = "random"; break;
  }
  c["seed"] = centers.seed;
  if (!centers.fixed_center.empty()) c["point"] = centers.fixed_center;
  j["centers"] = c;
  return j.dump(2);
}

} // namespace hmt::symbols
