#pragma once

#include <cstdint>
#include <string>

#include "hmt/hormander.hpp"
#include "hmt/oracles.hpp"
#include "hmt/symbols.hpp"

namespace hmt::opnorm {

/// Grid on which T_sigma is applied.
struct OperatorGrid {
  double box_side = 16.0;
  int samples_per_dim = 128;
};

struct OpNormEstimate {
  double p = 2.0;
  double lower_bound = 0.0; // best ||T_sigma f||_p / ||f||_p found
  std::string witness;      // description of the maximizing trial
  int trials = 0;
  std::uint64_t seed = 0;
  double K = 0.0; // Lorentz condition constant, when attached by the caller

  std::string to_json_text() const;
};

/// Lower-bound search over seeded trial families: random band-limited inputs,
/// modulated Gaussians at the symbol's dyadic centers, and (p = 2) power
/// iteration on T_sigma* T_sigma with repeated operator squaring.
OpNormEstimate empirical_opnorm(const symbols::SymbolSpec& spec, double p, int trials,
                                std::uint64_t seed, const OperatorGrid& grid = {});

/// |1/p - 1/2| < s/n with 0 < s < n.
bool in_theorem_region(double p, double s, int n);
std::string theorem_region_message(double p, double s, int n);

struct TheoremBoundCheck {
  OpNormEstimate estimate;
  hormander::ConditionReport condition;
  double c_emp = 0.0; // lower_bound / K
  bool passed = false;
};

TheoremBoundCheck theorem_bound_check(const symbols::SymbolSpec& spec, double p, double s,
                                      const spectral::LittlewoodPaleyFamily& fam,
                                      const OperatorGrid& op_grid = {},
                                      const hormander::PieceGrid& piece_grid = {});

} // namespace hmt::opnorm
