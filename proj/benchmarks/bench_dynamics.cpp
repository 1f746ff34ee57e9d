#include <benchmark/benchmark.h>

#include <mbslie/dynamics.hpp>
#include <mbslie/integrate.hpp>
#include <mbslie/models.hpp>

using namespace mbslie;
using models::BodyParams;

namespace {

BodyParams link(double length) {
  BodyParams p;
  p.mass = 1.0;
  p.inertia = Vec3(0.05, 0.05, 0.01);
  p.com_offset = Vec3(0.0, 0.0, -length / 2);
  p.gravity = Vec3(0.0, 0.0, -9.81);
  return p;
}

models::RigidBodySystem chain(GroupModel g) {
  models::ChainJoints j;
  j.body1_at_body2 = Vec3(0.0, 0.0, -0.5);
  return models::two_body_chain(link(0.5), link(0.4), j, g);
}

MbsState chain_state(const models::RigidBodySystem& sys, AbsKind kind) {
  return models::assemble_state(sys, kind, {Vec3(0.6, 0.0, 0.0), Vec3(0.0, 0.8, 0.2)},
                                {Vec3(0.0, 1.0, 0.5), Vec3(1.0, 0.0, -0.5)});
}

void BM_SolveKktChain(benchmark::State& state) {
  const auto g = state.range(0) == 0 ? GroupModel::SemiDirect : GroupModel::DirectProduct;
  const auto sys = chain(g);
  const MbsState s = chain_state(sys, AbsKind::QuatPos);
  const Configuration C = alpha_map(s.q);
  for (auto _ : state) benchmark::DoNotOptimize(solve_kkt(sys, C, s.V, 0.0));
  state.SetLabel(to_string(g));
}
BENCHMARK(BM_SolveKktChain)->Arg(0)->Arg(1);

void BM_StepMuntheKaasChain(benchmark::State& state) {
  const LgtCombo combo = LgtCombo::all()[static_cast<std::size_t>(state.range(0))];
  const auto sys = chain(combo.group());
  const MbsState s = chain_state(sys, combo.absolute);
  for (auto _ : state) benchmark::DoNotOptimize(step_munthe_kaas(sys, combo, s, 1e-3));
  state.SetLabel(combo.id());
}
BENCHMARK(BM_StepMuntheKaasChain)->DenseRange(0, 7);

void BM_StepBaselineChain(benchmark::State& state) {
  const auto g = state.range(0) == 0 ? GroupModel::SemiDirect : GroupModel::DirectProduct;
  const auto sys = chain(g);
  const MbsState s = chain_state(sys, AbsKind::QuatPos);
  for (auto _ : state) benchmark::DoNotOptimize(step_baseline_quat(sys, s, 1e-3));
  state.SetLabel(to_string(g));
}
BENCHMARK(BM_StepBaselineChain)->Arg(0)->Arg(1);

void BM_ProjectChain(benchmark::State& state) {
  const LgtCombo combo = LgtCombo::parse("1a");
  const auto sys = chain(combo.group());
  MbsState s = chain_state(sys, combo.absolute);
  VecX dX = VecX::Constant(12, 1e-5);
  s.q = apply_lgt(combo, s.q, dX);
  for (auto _ : state) benchmark::DoNotOptimize(project(sys, combo, s, 1e-12, 10));
}
BENCHMARK(BM_ProjectChain);

}  // namespace
