#include <benchmark/benchmark.h>

#include "wavemom/analytic_moments.hpp"
#include "wavemom/fields.hpp"

using namespace wavemom;

namespace {

void BM_quadrupole_field(benchmark::State &state) {
  const SymTensor3 q = SymTensor3::diag(1.0, 0.5, -1.5);
  double r = 1.0;
  for (auto _ : state) {
    r = (r < 50.0) ? r + 0.1 : 1.0;
    benchmark::DoNotOptimize(quadrupole_field(q, Vec3{r, 0.3 * r, 0.7 * r}));
  }
}
BENCHMARK(BM_quadrupole_field);

void BM_total_field_sample(benchmark::State &state) {
  const MomentSet ms = vortex_moments(5, 1.0, 1.0);
  double theta = 0.1;
  for (auto _ : state) {
    theta = (theta < 3.0) ? theta + 0.01 : 0.1;
    benchmark::DoNotOptimize(total_field(ms, 10.0, theta, 0.3));
  }
}
BENCHMARK(BM_total_field_sample);

} // namespace
