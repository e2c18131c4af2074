#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hmt/grid.hpp"
#include "hmt/spectral.hpp"

namespace hmt::symbols {

/// Dyadic center schedule j -> a_j, with a_j in the annulus 1/2 < |x| < 2.
struct CenterSchedule {
  enum class Preset { Fixed, Rotating, RandomSeeded };
  Preset preset = Preset::Fixed;
  std::uint64_t seed = 0;
  std::vector<double> fixed_center; // used by Fixed; defaults to (1, 0, ...)
  int shift = 0;                    // index offset: effective center is a_{k+shift}

  std::vector<double> center(int k, int dim) const;
};

enum class SymbolKind {
  Constant,
  MikhlinRiesz,
  PowerType,
  LogType,
  IteratedLog,
  Custom,
};

/// Declarative multiplier description. Scale-indexed kinds are sums over k of
/// bump(2^{-k} x) times a singular factor anchored at the center a_k.
struct SymbolSpec {
  SymbolKind kind = SymbolKind::Constant;
  int dim = 2;
  cplx constant = 1.0;
  double beta = -1.0; // < 0 for power/log kinds
  int ell = 1;        // log iterations, 1..3
  int axis = 0;       // Riesz-type axis
  CenterSchedule centers;
  std::shared_ptr<const GridFunction> custom; // frequency-domain samples
  bool diagnostic_unbounded = false; // allow +inf values from power_type eval

  void validate() const;
  SymbolSpec with_center_shift(int delta) const;

  static SymbolSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Radial bump supported exactly in (1/2, 2), normalized to max 1.
double annulus_bump(double r);
double annulus_bump(const double* x, int dim);

cplx eval_symbol(const SymbolSpec& spec, const double* xi);
cplx eval_symbol(const SymbolSpec& spec, const std::vector<double>& xi);

/// Samples of psi_hat(x) * sigma(2^j x) as a function on the given box;
/// supported in the annulus 1/2 < |x| < 2.
GridFunction localized_piece(const SymbolSpec& spec, int j,
                             const spectral::LittlewoodPaleyFamily& fam,
                             double box_side = 32.0, int samples_per_dim = 256);

/// sigma sampled on the frequency grid of grid_like (for applying T_sigma).
GridFunction symbol_samples(const SymbolSpec& spec, const GridFunction& grid_like);

struct MikhlinEntry {
  std::vector<int> alpha;
  double c_alpha = 0.0;          // sup over samples of |xi|^{|alpha|} |d^alpha sigma|
  double richardson_rel = 0.0;   // relative deviation of the h/2 re-evaluation
};

struct MikhlinReport {
  std::vector<MikhlinEntry> entries;
  const MikhlinEntry* find(const std::vector<int>& alpha) const;
};

/// Empirical Mikhlin constants via central finite differences at random
/// nonzero sample points with |xi| log-uniform in [r_min, r_max].
MikhlinReport mikhlin_check(const SymbolSpec& spec, int alpha_max, int sample_count,
                            std::uint64_t seed = 1, double r_min = 0.1,
                            double r_max = 10.0);

/// Same sup restricted to |xi| = radius (homogeneity diagnostics).
double mikhlin_sup_at_radius(const SymbolSpec& spec, const std::vector<int>& alpha,
                             double radius, int sample_count, std::uint64_t seed = 1);

/// |d^alpha sigma(xi)| by nested central differences, relative step h_rel*|xi|.
cplx finite_difference_derivative(const SymbolSpec& spec, std::vector<double> xi,
                                  std::vector<int> alpha, double h_rel = 1e-4);

} // namespace hmt::symbols
