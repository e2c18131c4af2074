#include <doctest.h>

#include <cmath>

#include "hmt/hormander.hpp"

using namespace hmt;
using namespace hmt::hormander;

namespace {

symbols::SymbolSpec constant_spec(double c, int dim) {
  symbols::SymbolSpec s;
  s.kind = symbols::SymbolKind::Constant;
  s.constant = c;
  s.dim = dim;
  return s;
}

} // namespace

TEST_CASE("constant symbol: K is |c| times the norm of one localized window") {
  auto fam = spectral::build_partition(-3, 3);
  PieceGrid grid{32.0, 128};
  auto spec = constant_spec(2.0, 1);
  auto unit = constant_spec(1.0, 1);
  auto rep = sobolev_condition(spec, 0.75, 2.0, fam, grid);
  auto rep1 = sobolev_condition(unit, 0.75, 2.0, fam, grid);
  CHECK(rep.per_j.size() == rep1.per_j.size());
  for (const auto& [j, kj] : rep.per_j) {
    CHECK(std::abs(kj - 2.0 * rep1.per_j.at(j)) < 1e-10 * kj);
    CHECK(std::abs(kj - rep.K) < 1e-10 * rep.K); // j-independent
  }
}

TEST_CASE("sobolev condition matches a direct smoothing of the piece") {
  auto fam = spectral::build_partition(0, 0);
  PieceGrid grid{32.0, 128};
  auto spec = constant_spec(1.0, 1);
  double s = 0.8, r = 1.5;
  auto rep = sobolev_condition(spec, s, r, fam, grid);
  auto piece = symbols::localized_piece(spec, 0, fam, grid.box_side, grid.samples_per_dim);
  auto smoothed = spectral::bessel_potential(piece, s);
  CHECK(std::abs(rep.K - smoothed.lp_norm(r)) < 1e-10 * rep.K);
}

TEST_CASE("condition constants increase with the smoothness order") {
  auto fam = spectral::build_partition(0, 0);
  PieceGrid grid{32.0, 128};
  auto spec = constant_spec(1.0, 1);
  double prev = 0.0;
  for (double s : {0.25, 0.5, 1.0, 2.0}) {
    double k = sobolev_condition(spec, s, 2.0, fam, grid).K;
    CHECK(k >= prev * (1.0 - 1e-12));
    prev = k;
  }
}

TEST_CASE("lorentz condition on a constant symbol is finite and j independent") {
  auto fam = spectral::build_partition(-2, 2);
  PieceGrid grid{32.0, 128};
  auto rep = lorentz_condition(constant_spec(1.0, 1), 0.5, fam, grid);
  CHECK(rep.K > 0.0);
  CHECK(std::isfinite(rep.K));
  for (const auto& [j, kj] : rep.per_j) CHECK(std::abs(kj - rep.K) < 1e-9 * rep.K);
  CHECK(rep.space.find("n/s") != std::string::npos);
}

TEST_CASE("parameter validation") {
  auto fam = spectral::build_partition(0, 0);
  auto spec = constant_spec(1.0, 2);
  CHECK_THROWS_AS(sobolev_condition(spec, -1.0, 2.0, fam), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_condition(spec, 1.0, 2.5, fam), std::invalid_argument);
  CHECK_THROWS_AS(lorentz_condition(spec, 0.0, fam), std::invalid_argument);
  CHECK_THROWS_AS(lorentz_condition(spec, 2.0, fam), std::invalid_argument); // s >= n
}

TEST_CASE("divergence flag compares resolutions") {
  ConditionReport a, b;
  a.per_j = {{0, 1.0}, {1, 2.0}};
  a.resolution = 128;
  b.per_j = {{0, 1.1}, {1, 3.0}};
  b.resolution = 256;
  auto flagged = flag_divergence(a, b);
  CHECK_FALSE(flagged.divergent_j.at(0));
  CHECK(flagged.divergent_j.at(1));
  CHECK(flagged.divergent);
  CHECK(flagged.K == 3.0);
}

TEST_CASE("log_type symbol with beta=-2 has a stable lorentz constant") {
  symbols::SymbolSpec spec;
  spec.kind = symbols::SymbolKind::LogType;
  spec.dim = 2;
  spec.beta = -2.0;
  auto fam = spectral::build_partition(0, 0);
  PieceGrid coarse{32.0, 128};
  auto rep = condition_with_refinement(spec, 1.0, NormKind::Lorentz, 0.0, fam, coarse);
  CHECK(std::isfinite(rep.K));
  CHECK_FALSE(rep.divergent);
}

TEST_CASE("power_type symbol is flagged divergent under refinement") {
  symbols::SymbolSpec spec;
  spec.kind = symbols::SymbolKind::PowerType;
  spec.dim = 2;
  spec.beta = -0.6;
  spec.diagnostic_unbounded = true;
  auto fam = spectral::build_partition(0, 0);
  PieceGrid coarse{32.0, 128};
  auto rep = condition_with_refinement(spec, 1.5, NormKind::Lorentz, 0.0, fam, coarse);
  CHECK(rep.divergent);
}

TEST_CASE("example integral: quadrature matches the antiderivative") {
  SUBCASE("n=2, beta=-1") {
    auto r = example_integral(-1.0, 2);
    CHECK(r.rel_diff < 1e-6);
    double expect = 1.0 / (1.0 + 2.0 * std::log(2.0));
    CHECK(std::abs(r.closed_form - expect) < 1e-12);
    CHECK(std::abs(r.quadrature - expect) < 1e-6 * expect);
  }
  SUBCASE("n=2, beta=-0.5") {
    auto r = example_integral(-0.5, 2);
    CHECK(r.rel_diff < 1e-6);
    double expect = 2.0 * std::pow(1.0 + 2.0 * std::log(2.0), -0.5);
    CHECK(std::abs(r.quadrature - expect) < 1e-6 * expect);
  }
  SUBCASE("n=1, beta=-1.7") {
    auto r = example_integral(-1.7, 1);
    CHECK(r.rel_diff < 1e-6);
  }
  SUBCASE("beta >= 0 rejected") {
    CHECK_THROWS_AS(example_integral(0.0, 2), std::invalid_argument);
  }
}

TEST_CASE("unit ball volumes") {
  CHECK(std::abs(unit_ball_volume(1) - 2.0) < 1e-14);
  const double pi = 3.14159265358979323846;
  CHECK(std::abs(unit_ball_volume(2) - pi) < 1e-14);
  CHECK(std::abs(unit_ball_volume(3) - 4.0 * pi / 3.0) < 1e-14);
}

TEST_CASE("report serialization includes the per-scale table") {
  auto fam = spectral::build_partition(-1, 1);
  auto rep = sobolev_condition(constant_spec(1.0, 1), 0.5, 2.0, fam, {32.0, 64});
  auto json = rep.to_json_text();
  CHECK(json.find("\"K\"") != std::string::npos);
  auto csv = rep.per_j_csv();
  CHECK(csv.find("j,") == 0);
  // one header plus one row per scale
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows >= rep.per_j.size());
}
