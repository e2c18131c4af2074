#include "hmt/hormander.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hmt/quadrature.hpp"

namespace hmt::hormander {

using std::numbers::pi;

double unit_ball_volume(int n) {
  return std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

namespace {

double piece_norm(const symbols::SymbolSpec& spec, int j, double s, NormKind kind,
                  double r, const spectral::LittlewoodPaleyFamily& fam,
                  const PieceGrid& grid) {
  GridFunction piece =
      symbols::localized_piece(spec, j, fam, grid.box_side, grid.samples_per_dim);
  GridFunction smoothed = spectral::bessel_potential(piece, s);
  if (kind == NormKind::LebesgueR) return smoothed.lp_norm(r);
  double p = spec.dim / s;
  return rearrange::lorentz_p1_norm(rearrange::rearrangement(smoothed), p);
}

ConditionReport run_condition(const symbols::SymbolSpec& spec, double s, NormKind kind,
                              double r, const spectral::LittlewoodPaleyFamily& fam,
                              const PieceGrid& grid) {
  spec.validate();
  ConditionReport rep;
  rep.s = s;
  rep.r = kind == NormKind::LebesgueR ? r : 0.0;
  rep.space = kind == NormKind::LebesgueR
                  ? "L^r"
                  : "L^{n/s,1}";
  rep.dim = spec.dim;
  rep.resolution = grid.samples_per_dim;
  rep.box = grid.box_side;
  rep.j_min = fam.j_min;
  rep.j_max = fam.j_max;

  // For a fixed-center schedule the pieces are identical across j, so one j
  // suffices; we still evaluate the whole window when the schedule varies.
  bool j_independent = spec.centers.preset == symbols::CenterSchedule::Preset::Fixed ||
                       spec.kind == symbols::SymbolKind::Constant ||
                       spec.kind == symbols::SymbolKind::MikhlinRiesz;
  // Riesz and constant symbols are exactly scale-invariant; scale-indexed
  // kinds with a fixed schedule are scale-invariant by construction.
  if (spec.kind == symbols::SymbolKind::Custom) j_independent = false;

  if (j_independent) {
    double k = piece_norm(spec, 0, s, kind, r, fam, grid);
    for (int j = fam.j_min; j <= fam.j_max; ++j) rep.per_j[j] = k;
  } else {
    for (int j = fam.j_min; j <= fam.j_max; ++j)
      rep.per_j[j] = piece_norm(spec, j, s, kind, r, fam, grid);
  }
  for (const auto& [j, k] : rep.per_j) rep.K = std::max(rep.K, k);
  return rep;
}

} // namespace

ConditionReport sobolev_condition(const symbols::SymbolSpec& spec, double s, double r,
                                  const spectral::LittlewoodPaleyFamily& fam,
                                  const PieceGrid& grid) {
  if (!(s > 0)) throw std::invalid_argument("sobolev_condition: s must be positive");
  if (!(r >= 1.0 && r <= 2.0))
    throw std::invalid_argument("sobolev_condition: r must lie in [1, 2]");
  return run_condition(spec, s, NormKind::LebesgueR, r, fam, grid);
}

ConditionReport lorentz_condition(const symbols::SymbolSpec& spec, double s,
                                  const spectral::LittlewoodPaleyFamily& fam,
                                  const PieceGrid& grid) {
  if (!(s > 0.0 && s < spec.dim))
    throw std::invalid_argument("lorentz_condition: s must lie in (0, n)");
  return run_condition(spec, s, NormKind::Lorentz, 0.0, fam, grid);
}

ConditionReport flag_divergence(const ConditionReport& at_n, const ConditionReport& at_2n) {
  ConditionReport rep = at_2n;
  rep.K = 0.0;
  for (const auto& [j, k2] : at_2n.per_j) {
    rep.K = std::max(rep.K, k2);
    auto it = at_n.per_j.find(j);
    if (it == at_n.per_j.end()) continue;
    bool div = k2 > 1.25 * it->second;
    rep.divergent_j[j] = div;
    if (div) rep.divergent = true;
  }
  return rep;
}

ConditionReport condition_with_refinement(const symbols::SymbolSpec& spec, double s,
                                          NormKind kind, double r,
                                          const spectral::LittlewoodPaleyFamily& fam,
                                          const PieceGrid& grid) {
  PieceGrid fine = grid;
  fine.samples_per_dim *= 2;
  ConditionReport coarse = kind == NormKind::LebesgueR
                               ? sobolev_condition(spec, s, r, fam, grid)
                               : lorentz_condition(spec, s, fam, grid);
  ConditionReport refined = kind == NormKind::LebesgueR
                                ? sobolev_condition(spec, s, r, fam, fine)
                                : lorentz_condition(spec, s, fam, fine);
  return flag_divergence(coarse, refined);
}

ExampleIntegral example_integral(double beta, int n) {
  if (!(beta < 0)) throw std::invalid_argument("example_integral: beta must be negative");
  const double u0 = 1.0 + n * std::log(2.0); // log(e 4^n w_n / t) at t = 2^n w_n
  // substitute u = log(e 4^n wn / t): integral becomes int_{u0}^inf u^{beta-1} du
  ExampleIntegral out;
  out.quadrature = quad::integrate_to_inf(
      [beta](double u) { return std::pow(u, beta - 1.0); }, u0, 1e-12, 1e-12);
  out.closed_form = std::pow(u0, beta) / (-beta);
  out.rel_diff = std::abs(out.quadrature - out.closed_form) / out.closed_form;
  return out;
}

std::string ConditionReport::to_json_text() const {
  nlohmann::json j;
  j["K"] = K;
  j["divergent"] = divergent;
  j["s"] = s;
  j["space"] = space;
  if (r > 0) j["r"] = r;
  j["dim"] = dim;
  j["resolution"] = resolution;
  j["box"] = box;
  j["j_range"] = {j_min, j_max};
  nlohmann::json per;
  for (const auto& [jj, k] : per_j) {
    nlohmann::json row;
    row["j"] = jj;
    row["K_j"] = k;
    auto it = divergent_j.find(jj);
    if (it != divergent_j.end()) row["divergent"] = it->second;
    per.push_back(row);
  }
  j["per_j"] = per;
  return j.dump(2);
}

std::string ConditionReport::per_j_csv() const {
  std::ostringstream os;
  os << "j,K_j,resolution,s,space\n";
  char buf[64];
  for (const auto& [jj, k] : per_j) {
    std::snprintf(buf, sizeof buf, "%.17g", k);
    os << jj << ',' << buf << ',' << resolution << ',';
    std::snprintf(buf, sizeof buf, "%.17g", s);
    os << buf << ',' << space << '\n';
  }
  return os.str();
}

} // namespace hmt::hormander
