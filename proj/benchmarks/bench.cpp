#include <benchmark/benchmark.h>

#include <random>

#include "hmt/hormander.hpp"
#include "hmt/maximal.hpp"
#include "hmt/rearrange.hpp"
#include "hmt/spectral.hpp"
#include "hmt/symbols.hpp"

using namespace hmt;

namespace {

GridFunction random_grid(int dim, int n, std::uint64_t seed) {
  GridFunction g(dim, 16.0, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = cplx(nd(rng), nd(rng));
  return g;
}

void bm_fft_round_trip(benchmark::State& state) {
  auto f = random_grid(2, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    auto g = spectral::inverse_fourier(spectral::forward_fourier(f));
    benchmark::DoNotOptimize(g[0]);
  }
}
BENCHMARK(bm_fft_round_trip)->Arg(64)->Arg(128)->Arg(256);

void bm_rearrangement(benchmark::State& state) {
  auto f = random_grid(2, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    auto prof = rearrange::rearrangement(f);
    benchmark::DoNotOptimize(prof.values.data());
  }
}
BENCHMARK(bm_rearrangement)->Arg(64)->Arg(128)->Arg(256);

void bm_centered_maximal(benchmark::State& state) {
  auto f = random_grid(2, static_cast<int>(state.range(0)), 3);
  auto radii = maximal::RadiusSet::lattice_defaults(f);
  for (auto _ : state) {
    double m = maximal::centered_maximal(f, 2.5, f.size() / 2, radii);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(bm_centered_maximal)->Arg(64)->Arg(128)->Arg(256);

void bm_lorentz_condition_piece(benchmark::State& state) {
  symbols::SymbolSpec spec;
  spec.kind = symbols::SymbolKind::LogType;
  spec.dim = 2;
  spec.beta = -2.0;
  auto fam = spectral::build_partition(0, 0);
  hormander::PieceGrid grid{32.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    auto rep = hormander::lorentz_condition(spec, 1.0, fam, grid);
    benchmark::DoNotOptimize(rep.K);
  }
}
BENCHMARK(bm_lorentz_condition_piece)->Arg(128)->Arg(256);

} // namespace

BENCHMARK_MAIN();
