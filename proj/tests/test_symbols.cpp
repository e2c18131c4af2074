#include <doctest.h>

#include <cmath>

#include "hmt/symbols.hpp"

using namespace hmt;
using namespace hmt::symbols;

namespace {

SymbolSpec log_spec(int dim = 2, double beta = -1.0) {
  SymbolSpec s;
  s.kind = SymbolKind::LogType;
  s.dim = dim;
  s.beta = beta;
  return s;
}

} // namespace

TEST_CASE("constant symbol evaluates to its constant") {
  SymbolSpec s;
  s.kind = SymbolKind::Constant;
  s.constant = cplx(2.5, -1.0);
  s.dim = 2;
  CHECK(eval_symbol(s, {0.3, -4.0}) == s.constant);
  CHECK(eval_symbol(s, {0.0, 0.0}) == s.constant);
}

TEST_CASE("log_type vanishes outside every bump and at the origin") {
  auto s = log_spec();
  CHECK(eval_symbol(s, {0.0, 0.0}) == cplx(0.0));
  // |xi| = 2^k * 2 sits on the boundary of every rescaled annulus
  CHECK(std::abs(eval_symbol(s, {2.0, 0.0})) == 0.0);
  CHECK(std::abs(eval_symbol(s, {4.0, 0.0})) == 0.0);
}

TEST_CASE("log_type at a singular center returns the limit value 0") {
  auto s = log_spec();
  // fixed schedule: a_k = (1, 0); xi = 2^3 * a_3
  CHECK(std::abs(eval_symbol(s, {8.0, 0.0})) == 0.0);
}

TEST_CASE("log_type is bounded by the bump sup") {
  auto s = log_spec();
  for (double x = 0.1; x < 20.0; x += 0.0837) {
    double v = std::abs(eval_symbol(s, {x, 0.3 * x}));
    CHECK(v >= 0.0);
    CHECK(v <= 2.0); // each term is bump * factor with both in [0, 1]
  }
}

TEST_CASE("index shift identity: shifted schedule at xi equals original at 2 xi") {
  auto s = log_spec();
  s.centers.preset = CenterSchedule::Preset::RandomSeeded;
  s.centers.seed = 99;
  auto shifted = s.with_center_shift(1);
  for (double x = 0.3; x < 10.0; x += 0.317) {
    cplx lhs = eval_symbol(shifted, {x, 0.2});
    cplx rhs = eval_symbol(s, {2.0 * x, 0.4});
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("power_type throws on unbounded evaluation unless diagnostic") {
  SymbolSpec s;
  s.kind = SymbolKind::PowerType;
  s.dim = 2;
  s.beta = -0.6;
  CHECK_THROWS_AS(eval_symbol(s, {1.0, 0.0}), std::domain_error); // exactly a center
  s.diagnostic_unbounded = true;
  CHECK(std::isinf(std::abs(eval_symbol(s, {1.0, 0.0}))));
}

TEST_CASE("localized piece support and constant case") {
  auto fam = spectral::build_partition(-2, 2);
  SUBCASE("constant gives c * psi_hat") {
    SymbolSpec s;
    s.kind = SymbolKind::Constant;
    s.constant = 3.0;
    s.dim = 1;
    auto piece = localized_piece(s, 0, fam, 16.0, 128);
    for (std::size_t i = 0; i < piece.size(); ++i) {
      double x = piece.coord(static_cast<int>(i));
      CHECK(std::abs(piece[i] - 3.0 * fam.psi_hat(std::abs(x))) < 1e-14);
    }
  }
  SUBCASE("zero outside the annulus for every kind") {
    for (auto spec : {log_spec(2, -2.0), [] {
                        SymbolSpec s;
                        s.kind = SymbolKind::MikhlinRiesz;
                        s.dim = 2;
                        return s;
                      }()}) {
      auto piece = localized_piece(spec, 1, fam, 16.0, 64);
      double x[3];
      for (std::size_t i = 0; i < piece.size(); ++i) {
        piece.point(i, x);
        double r = std::hypot(x[0], x[1]);
        if (r <= 0.5 || r >= 2.0) CHECK(std::abs(piece[i]) == 0.0);
      }
    }
  }
  SUBCASE("fixed schedule pieces agree across j") {
    auto s = log_spec();
    auto a = localized_piece(s, 0, fam, 16.0, 64);
    auto b = localized_piece(s, 2, fam, 16.0, 64);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
  }
}

TEST_CASE("mikhlin check: constant has zero derivative constants") {
  SymbolSpec s;
  s.kind = SymbolKind::Constant;
  s.constant = 4.0;
  s.dim = 2;
  auto rep = mikhlin_check(s, 2, 20);
  for (const auto& e : rep.entries) CHECK(e.c_alpha < 1e-9);
}

TEST_CASE("mikhlin check: riesz symbol is scale invariant") {
  SymbolSpec s;
  s.kind = SymbolKind::MikhlinRiesz;
  s.dim = 2;
  std::vector<int> alpha{1, 0};
  double c1 = mikhlin_sup_at_radius(s, alpha, 0.1, 200, 3);
  double c2 = mikhlin_sup_at_radius(s, alpha, 1.0, 200, 3);
  double c3 = mikhlin_sup_at_radius(s, alpha, 10.0, 200, 3);
  CHECK(std::abs(c1 / c2 - 1.0) < 0.01);
  CHECK(std::abs(c3 / c2 - 1.0) < 0.01);
}

TEST_CASE("mikhlin check: log_type gradient grows near a center") {
  // gradient magnitude ~ |beta| n (log(1/d))^{beta-1} / d at distance d
  auto s = log_spec(2, -1.0);
  double prev = 0.0;
  for (double d : {1e-1, 1e-2, 1e-3}) {
    std::vector<double> xi{1.0 + d, 0.0}; // distance d from the center (1,0)
    double g = std::abs(finite_difference_derivative(s, xi, {1, 0}, 1e-3 * d));
    CHECK(g > prev); // monotone growth
    prev = g;
  }
  // compare order of magnitude against the derived formula at d = 1e-3
  double d = 1e-3;
  double arg = std::exp(1.0) * 16.0 / (d * d);
  double predict = 2.0 * std::pow(std::log(arg), -2.0) / d;
  double g = std::abs(finite_difference_derivative(s, {1.0 + d, 0.0}, {1, 0}, 1e-3 * d));
  CHECK(g / predict > 0.2);
  CHECK(g / predict < 5.0);
}

TEST_CASE("json round trip and error reporting") {
  auto s = SymbolSpec::from_json_text(
      R"({"kind":"log_type","beta":-2,"dim":2,"centers":{"preset":"rotating","seed":7}})");
  CHECK(s.kind == SymbolKind::LogType);
  CHECK(s.beta == -2.0);
  CHECK(s.centers.preset == CenterSchedule::Preset::Rotating);
  auto round = SymbolSpec::from_json_text(s.to_json_text());
  CHECK(round.beta == s.beta);
  CHECK(round.dim == s.dim);

  CHECK_THROWS_WITH_AS(SymbolSpec::from_json_text(R"({"kind":"log_type","dim":2})"),
                       "missing field: beta", std::invalid_argument);
  CHECK_THROWS_AS(SymbolSpec::from_json_text(R"({"kind":"nope"})"),
                  std::invalid_argument);
}

TEST_CASE("iterated log: every iteration stays well defined and bounded") {
  SymbolSpec s;
  s.kind = SymbolKind::IteratedLog;
  s.dim = 2;
  s.beta = -1.5;
  for (int ell : {1, 2, 3}) {
    s.ell = ell;
    for (double x = 0.6; x < 4.0; x += 0.093) {
      double v = std::abs(eval_symbol(s, {x, 0.1}));
      CHECK(std::isfinite(v));
      CHECK(v <= 2.0);
    }
  }
  s.ell = 4;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
