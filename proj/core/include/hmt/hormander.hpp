#pragma once

#include <map>
#include <string>

#include "hmt/rearrange.hpp"
#include "hmt/spectral.hpp"
#include "hmt/symbols.hpp"

namespace hmt::hormander {

/// Grid used for the localized pieces. The piece is supported in |x| < 2, so
/// the default box leaves ample periodization margin.
struct PieceGrid {
  double box_side = 32.0;
  int samples_per_dim = 256;
};

enum class NormKind { LebesgueR, Lorentz };

/// Per-scale condition constants K_j and their max K.
struct ConditionReport {
  std::map<int, double> per_j;
  double K = 0.0;
  std::map<int, bool> divergent_j; // filled by flag_divergence
  bool divergent = false;

  // parameters, for emission
  double s = 0.0;
  double r = 0.0; // integrability index; 0 means Lorentz space n/s,1
  std::string space;
  int dim = 0;
  int resolution = 0;
  double box = 0.0;
  int j_min = 0, j_max = 0;

  std::string to_json_text() const;
  std::string per_j_csv() const; // columns: j, K_j, resolution, s, space
};

/// Classical condition: sup_j || (I-Delta)^{s/2} [psi_hat sigma(2^j .)] ||_{L^r}.
ConditionReport sobolev_condition(const symbols::SymbolSpec& spec, double s, double r,
                                  const spectral::LittlewoodPaleyFamily& fam,
                                  const PieceGrid& grid = {});

/// Lorentz variant: the L^{n/s,1} norm of the same pieces; requires 0 < s < n.
ConditionReport lorentz_condition(const symbols::SymbolSpec& spec, double s,
                                  const spectral::LittlewoodPaleyFamily& fam,
                                  const PieceGrid& grid = {});

/// Marks K_j divergent if it grows by more than 25% from resolution N to 2N.
ConditionReport flag_divergence(const ConditionReport& at_n, const ConditionReport& at_2n);

/// Runs the condition at N and 2N and applies the divergence flags.
ConditionReport condition_with_refinement(const symbols::SymbolSpec& spec, double s,
                                          NormKind kind, double r,
                                          const spectral::LittlewoodPaleyFamily& fam,
                                          const PieceGrid& grid = {});

struct ExampleIntegral {
  double quadrature = 0.0;
  double closed_form = 0.0;
  double rel_diff = 0.0;
};

/// int_0^{2^n w_n} (log(e 4^n w_n / t))^{beta-1} / t dt, quadrature vs the
/// antiderivative value (1/(-beta)) (1 + n log 2)^beta.
ExampleIntegral example_integral(double beta, int n);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

} // namespace hmt::hormander
