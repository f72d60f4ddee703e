#include <benchmark/benchmark.h>

#include "wavemom/grid_moments.hpp"

using namespace wavemom;

namespace {

void BM_grid_stream_lg(benchmark::State &state) {
  PacketSpec spec;
  spec.family = Family::LgVortex;
  spec.ell = 2;
  spec.mean_p = Vec3{0, 0, 1.0};
  GridConfig cfg;
  cfg.points_per_axis = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(grid_moments(spec, cfg));
}
BENCHMARK(BM_grid_stream_lg)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_grid_transform_airy(benchmark::State &state) {
  PacketSpec spec;
  spec.family = Family::Airy;
  spec.xi_x3 = 0.5;
  spec.mean_p = Vec3{0, 0, 1.0};
  GridConfig cfg;
  cfg.points_per_axis = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(grid_moments(spec, cfg));
}
BENCHMARK(BM_grid_transform_airy)->Arg(128)->Unit(benchmark::kMillisecond);

} // namespace
