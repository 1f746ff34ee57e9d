#include <benchmark/benchmark.h>

#include <mbslie/lgt.hpp>
#include <mbslie/rotmaps.hpp>

using namespace mbslie;

namespace {

AbsCoords start(const LgtCombo& combo) {
  const Vec3 rho(0.3, -0.8, 1.2);
  const Vec3 r(1.0, 2.0, 3.0);
  if (combo.absolute == AbsKind::QuatPos) return QuatPos{exp_sp1(rho), r};
  return AxisAnglePos{rho, r};
}

void BM_ApplyLgt(benchmark::State& state) {
  const LgtCombo combo = LgtCombo::all()[static_cast<std::size_t>(state.range(0))];
  const AbsCoords q = start(combo);
  const LocalCoords X =
      make_local(combo, (Vec6() << 0.01, -0.02, 0.03, 0.001, 0.002, -0.001).finished());
  for (auto _ : state) benchmark::DoNotOptimize(apply_lgt(combo, q, X));
  state.SetLabel(combo.id());
}
BENCHMARK(BM_ApplyLgt)->DenseRange(0, 7);

void BM_DpsiInv(benchmark::State& state) {
  const LgtCombo combo = LgtCombo::all()[static_cast<std::size_t>(state.range(0))];
  const LocalCoords X =
      make_local(combo, (Vec6() << 0.01, -0.02, 0.03, 0.001, 0.002, -0.001).finished());
  for (auto _ : state) benchmark::DoNotOptimize(dpsi_inv(combo, X));
  state.SetLabel(combo.id());
}
BENCHMARK(BM_DpsiInv)->DenseRange(0, 7);

void BM_AlphaMap(benchmark::State& state) {
  const AbsCoords q = start(LgtCombo::all()[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_map(q));
}
BENCHMARK(BM_AlphaMap)->Arg(0)->Arg(4);

}  // namespace
