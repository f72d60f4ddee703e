#include <benchmark/benchmark.h>

#include "wavemom/numeric_moments.hpp"

using namespace wavemom;

namespace {

PacketSpec lg_spec(int ell) {
  PacketSpec s;
  s.family = Family::LgVortex;
  s.ell = ell;
  s.mean_p = Vec3{0, 0, 1.0};
  return s;
}

void BM_vortex_polar(benchmark::State &state) {
  const PacketSpec spec = lg_spec(static_cast<int>(state.range(0)));
  QuadratureConfig quad;
  quad.nodes_per_axis = 32;
  quad.check_convergence = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(moments_general(spec, quad));
}
BENCHMARK(BM_vortex_polar)->Arg(1)->Arg(20)->Arg(1000);

void BM_phase_covariance(benchmark::State &state) {
  PacketSpec spec;
  spec.family = Family::GaussPhase;
  spec.phase = PhaseExpr::parse("(p_x^3 + 0.5*p_y^3)/3 - 0.2*p_x*p_y");
  QuadratureConfig quad;
  quad.nodes_per_axis = static_cast<int>(state.range(0));
  quad.check_convergence = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(moments_phase_formula(spec, quad));
}
BENCHMARK(BM_phase_covariance)->Arg(16)->Arg(32)->Arg(48);

void BM_cat_oscillatory(benchmark::State &state) {
  PacketSpec spec;
  spec.family = Family::Cat;
  spec.cat_r0 = Vec3{static_cast<double>(state.range(0)), 0, 0};
  spec.parity = CatParity::Even;
  QuadratureConfig quad;
  quad.nodes_per_axis = 32;
  quad.check_convergence = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(moments_general(spec, quad));
}
BENCHMARK(BM_cat_oscillatory)->Arg(1)->Arg(3);

} // namespace
