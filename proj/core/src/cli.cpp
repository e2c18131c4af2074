#include "hmt/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmt/hormander.hpp"
#include "hmt/io.hpp"
#include "hmt/maximal.hpp"
#include "hmt/opnorm.hpp"
#include "hmt/oracles.hpp"
#include "hmt/rearrange.hpp"

namespace hmt::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOpts {
  std::string config_path;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  int resolution = 0; // 0: take from config
  double box = 0.0;
  int dim = 0;
  bool override_region = false;
  bool seed_set = false, resolution_set = false, box_set = false, dim_set = false;
};

json load_config(const GlobalOpts& g) {
  std::ifstream is(g.config_path);
  if (!is) throw std::runtime_error("cannot open config: " + g.config_path);
  return json::parse(is);
}

// command-line overrides win over config values
template <typename T>
T resolved(const json& cfg, const char* key, T fallback, bool overridden, T override_value) {
  if (overridden) return override_value;
  return cfg.value(key, fallback);
}

void write_with_provenance(const fs::path& path, const json& resolved_config,
                           const std::string& body) {
  io::write_text_file(path, "# config: " + resolved_config.dump() + "\n" + body);
}

GridFunction random_function(int dim, double box, int n, std::mt19937_64& rng) {
  GridFunction f(dim, box, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(gauss(rng), gauss(rng));
  return f;
}

int cmd_analyze_symbol(const GlobalOpts& g) {
  json cfg = load_config(g);
  if (!cfg.contains("symbol")) {
    std::cerr << "config error: missing field 'symbol'\n";
    return 1;
  }
  symbols::SymbolSpec spec;
  try {
    spec = symbols::SymbolSpec::from_json_text(cfg.at("symbol").dump());
  } catch (const std::exception& e) {
    std::cerr << "config error in 'symbol': " << e.what() << "\n";
    return 1;
  }
  if (g.dim_set) spec.dim = g.dim;

  double s = cfg.value("s", 1.0);
  std::string space = cfg.value("space", "lorentz");
  double r = cfg.value("r", 2.0);
  bool refine = cfg.value("refine", true);
  hormander::PieceGrid grid;
  grid.box_side = resolved(cfg, "box", 32.0, g.box_set, g.box);
  grid.samples_per_dim = resolved(cfg, "resolution", 256, g.resolution_set, g.resolution);
  int j_min = cfg.value("j_min", -2), j_max = cfg.value("j_max", 2);

  json resolved_cfg = cfg;
  resolved_cfg["s"] = s;
  resolved_cfg["space"] = space;
  resolved_cfg["box"] = grid.box_side;
  resolved_cfg["resolution"] = grid.samples_per_dim;
  resolved_cfg["j_min"] = j_min;
  resolved_cfg["j_max"] = j_max;

  hormander::ConditionReport rep;
  try {
    auto fam = spectral::build_partition(j_min, j_max);
    auto kind = space == "sobolev" ? hormander::NormKind::LebesgueR
                                   : hormander::NormKind::Lorentz;
    if (refine)
      rep = hormander::condition_with_refinement(spec, s, kind, r, fam, grid);
    else
      rep = kind == hormander::NormKind::LebesgueR
                ? hormander::sobolev_condition(spec, s, r, fam, grid)
                : hormander::lorentz_condition(spec, s, fam, grid);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  fs::create_directories(g.output_dir);
  write_with_provenance(fs::path(g.output_dir) / "condition_per_j.csv", resolved_cfg,
                        rep.per_j_csv());
  json summary = json::parse(rep.to_json_text());
  summary["config"] = resolved_cfg;
  io::write_text_file(fs::path(g.output_dir) / "condition_summary.json",
                      summary.dump(2) + "\n");
  std::cout << "K = " << io::format_full(rep.K)
            << (rep.divergent ? " (divergent under refinement)" : "") << "\n";
  return rep.divergent ? 2 : 0;
}

int cmd_check_lemmas(const GlobalOpts& g) {
  json cfg = load_config(g);
  std::vector<std::string> suites = cfg.value("suites", std::vector<std::string>{});
  if (suites.empty()) {
    std::cerr << "config error: missing or empty field 'suites'\n";
    return 1;
  }
  std::uint64_t seed = g.seed_set ? g.seed : cfg.value("seed", std::uint64_t{1});
  int dim = resolved(cfg, "dim", 1, g.dim_set, g.dim);
  int n_grid = resolved(cfg, "resolution", 64, g.resolution_set, g.resolution);
  double box = resolved(cfg, "box", 16.0, g.box_set, g.box);
  int pairs = cfg.value("pairs", 1000);
  int profiles = cfg.value("profiles", 500);

  json resolved_cfg = cfg;
  resolved_cfg["seed"] = seed;
  resolved_cfg["dim"] = dim;
  resolved_cfg["resolution"] = n_grid;
  resolved_cfg["box"] = box;

  std::mt19937_64 rng(seed);
  std::vector<oracles::CheckResult> results;
  bool explicit_ok = true;

  for (const std::string& suite : suites) {
    if (suite == "three_lines") {
      for (int i = 1; i <= 9; ++i) {
        double theta = i / 10.0;
        auto [a, b] = oracles::three_lines_identity(theta);
        auto r1 = oracles::explicit_check(std::abs(a - (1.0 - theta)), 1e-8, 1.0,
                                          "three_lines minus theta=" + std::to_string(theta));
        auto r2 = oracles::explicit_check(std::abs(b - theta), 1e-8, 1.0,
                                          "three_lines plus theta=" + std::to_string(theta));
        results.push_back(r1);
        results.push_back(r2);
        explicit_ok = explicit_ok && r1.passed && r2.passed;
      }
    } else if (suite == "holder_lorentz") {
      const double ps[3] = {1.5, 2.0, 3.0};
      for (int i = 0; i < pairs; ++i) {
        auto f = random_function(dim, box, n_grid, rng);
        auto gfun = random_function(dim, box, n_grid, rng);
        auto r = oracles::holder_lorentz(f, gfun, ps[i % 3]);
        results.push_back(r);
        explicit_ok = explicit_ok && r.passed;
      }
    } else if (suite == "sunrise") {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      std::uniform_int_distribution<int> nk(1, 3);
      for (int i = 0; i < profiles; ++i) {
        int n = nk(rng);
        double s = (0.2 + 0.7 * unif(rng)) * n;
        double a = s * (0.1 + 0.8 * unif(rng));
        int steps = 1 + static_cast<int>(unif(rng) * 49);
        std::vector<double> mags(static_cast<std::size_t>(steps));
        for (auto& m : mags) m = unif(rng) * 10.0;
        auto prof = rearrange::profile_from_magnitudes(mags, 0.1 + unif(rng));
        auto r = oracles::sunrise_check(prof, a, s, n);
        results.push_back(r);
        explicit_ok = explicit_ok && r.passed;
      }
    } else if (suite == "sobolev_embedding" || suite == "imaginary_power" ||
               suite == "kato_ponce") {
      auto fam = spectral::default_partition(box, n_grid);
      for (int i = 0; i < 20; ++i) {
        auto f = random_function(dim, box, n_grid, rng);
        oracles::CheckResult r;
        if (suite == "sobolev_embedding")
          r = oracles::sobolev_embedding_check(f, 0.5 * dim);
        else if (suite == "imaginary_power")
          r = oracles::imaginary_power_check(f, 4.0, 1.5);
        else
          r = oracles::kato_ponce_lorentz_check(f, 1.0, 2.0, fam);
        results.push_back(r);
      }
    } else if (suite == "lemma_ratio") {
      auto radii = maximal::RadiusSet::lattice_defaults(GridFunction(dim, box, n_grid));
      double s = 0.5 * dim, q = dim / s + 1.0;
      std::uniform_int_distribution<int> jdist(-2, 2);
      for (int i = 0; i < 50; ++i) {
        auto f = random_function(dim, box, n_grid, rng);
        std::size_t x = rng() % f.size();
        double ratio = maximal::lemma_ratio(f, x, jdist(rng), s, q, radii);
        results.push_back(oracles::empirical_check(ratio, 1.0, "lemma_ratio"));
      }
    } else {
      std::cerr << "unknown suite name: " << suite << "\n";
      return 1;
    }
  }

  fs::create_directories(g.output_dir);
  std::string lines;
  int passed = 0;
  for (const auto& r : results) {
    lines += r.to_json_line() + "\n";
    if (r.passed) ++passed;
  }
  io::write_text_file(fs::path(g.output_dir) / "checks.jsonl", lines);
  std::ostringstream csv;
  csv << "suite_size,passed,failed\n"
      << results.size() << ',' << passed << ',' << results.size() - passed << '\n';
  write_with_provenance(fs::path(g.output_dir) / "checks_summary.csv", resolved_cfg,
                        csv.str());
  std::cout << passed << "/" << results.size() << " checks passed\n";
  return explicit_ok ? 0 : 1;
}

int cmd_estimate_opnorm(const GlobalOpts& g) {
  json cfg = load_config(g);
  if (!cfg.contains("symbol")) {
    std::cerr << "config error: missing field 'symbol'\n";
    return 1;
  }
  symbols::SymbolSpec spec;
  try {
    spec = symbols::SymbolSpec::from_json_text(cfg.at("symbol").dump());
  } catch (const std::exception& e) {
    std::cerr << "config error in 'symbol': " << e.what() << "\n";
    return 1;
  }
  std::vector<double> p_list = cfg.value("p", std::vector<double>{2.0});
  double s = cfg.value("s", 1.0);
  int trials = cfg.value("trials", 40);
  std::uint64_t seed = g.seed_set ? g.seed : cfg.value("seed", std::uint64_t{1});
  opnorm::OperatorGrid op_grid;
  op_grid.box_side = resolved(cfg, "box", 16.0, g.box_set, g.box);
  op_grid.samples_per_dim = resolved(cfg, "resolution", 128, g.resolution_set, g.resolution);
  hormander::PieceGrid piece_grid;
  piece_grid.samples_per_dim = cfg.value("piece_resolution", 256);
  int j_min = cfg.value("j_min", -2), j_max = cfg.value("j_max", 2);

  json resolved_cfg = cfg;
  resolved_cfg["p"] = p_list;
  resolved_cfg["s"] = s;
  resolved_cfg["seed"] = seed;
  resolved_cfg["box"] = op_grid.box_side;
  resolved_cfg["resolution"] = op_grid.samples_per_dim;

  for (double p : p_list) {
    if (!opnorm::in_theorem_region(p, s, spec.dim) && !g.override_region) {
      std::cerr << "outside the theorem region: "
                << opnorm::theorem_region_message(p, s, spec.dim)
                << " (use --override-region to force)\n";
      return 1;
    }
  }

  auto fam = spectral::build_partition(j_min, j_max);
  hormander::ConditionReport cond;
  try {
    cond = hormander::lorentz_condition(spec, s, fam, piece_grid);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  bool all_passed = true;
  std::vector<std::vector<double>> rows;
  json jrows = json::array();
  for (double p : p_list) {
    auto est = opnorm::empirical_opnorm(spec, p, trials, seed, op_grid);
    est.K = cond.K;
    double c_emp = cond.K > 0 ? est.lower_bound / cond.K
                              : std::numeric_limits<double>::infinity();
    bool row_ok = std::isfinite(c_emp);
    all_passed = all_passed && row_ok;
    rows.push_back({p, s, static_cast<double>(spec.dim), cond.K, est.lower_bound, c_emp,
                    static_cast<double>(trials), static_cast<double>(seed),
                    static_cast<double>(op_grid.samples_per_dim), op_grid.box_side});
    json row = json::parse(est.to_json_text());
    row["c_emp"] = c_emp;
    row["s"] = s;
    jrows.push_back(row);
  }

  fs::create_directories(g.output_dir);
  std::ostringstream body;
  body << "p,s,n,K,lower_bound,C_emp,trials,seed,N,L\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      body << (i ? "," : "") << io::format_full(row[i]);
    body << "\n";
  }
  write_with_provenance(fs::path(g.output_dir) / "opnorm.csv", resolved_cfg, body.str());
  json summary;
  summary["rows"] = jrows;
  summary["config"] = resolved_cfg;
  io::write_text_file(fs::path(g.output_dir) / "opnorm.json", summary.dump(2) + "\n");
  return all_passed ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Fourier multiplier condition and inequality toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", g.config_path, "JSON config path")->required();
    sub->add_option("--output", g.output_dir, "output directory");
    sub->add_option("--seed", g.seed)->each([&](const std::string&) { g.seed_set = true; });
    sub->add_option("--resolution", g.resolution)
        ->each([&](const std::string&) { g.resolution_set = true; });
    sub->add_option("--box", g.box)->each([&](const std::string&) { g.box_set = true; });
    sub->add_option("--dim", g.dim)->each([&](const std::string&) { g.dim_set = true; });
  };

  auto* analyze = app.add_subcommand("analyze-symbol",
                                     "evaluate a multiplier condition for a symbol");
  add_common(analyze);
  auto* lemmas = app.add_subcommand("check-lemmas", "run inequality/identity suites");
  add_common(lemmas);
  auto* opn = app.add_subcommand("estimate-opnorm",
                                 "empirical operator norm vs the condition constant");
  add_common(opn);
  opn->add_flag("--override-region", g.override_region,
                "run outside the theorem region anyway");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (analyze->parsed()) return cmd_analyze_symbol(g);
    if (lemmas->parsed()) return cmd_check_lemmas(g);
    if (opn->parsed()) return cmd_estimate_opnorm(g);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

} // namespace hmt::cli
