#include <benchmark/benchmark.h>

#include <mbslie/motiongroups.hpp>
#include <mbslie/rotmaps.hpp>

using namespace mbslie;

namespace {

const Vec3 kX(0.4, -1.1, 0.7);
const Vec3 kY(0.2, 0.5, -0.3);

void BM_ExpSO3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exp_so3(kX));
}
BENCHMARK(BM_ExpSO3);

void BM_LogSO3(benchmark::State& state) {
  const RotationMatrix R = exp_so3(kX);
  for (auto _ : state) benchmark::DoNotOptimize(log_so3(R));
}
BENCHMARK(BM_LogSO3);

void BM_DexpInvSO3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dexp_inv_so3(kX));
}
BENCHMARK(BM_DexpInvSO3);

void BM_CaySO3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cay_so3(kX));
}
BENCHMARK(BM_CaySO3);

void BM_DcayInvSO3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dcay_inv_so3(kX));
}
BENCHMARK(BM_DcayInvSO3);

void BM_ExpSE3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exp_se3({kX, kY}));
}
BENCHMARK(BM_ExpSE3);

void BM_DexpInvSE3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dexp_inv_se3({kX, kY}));
}
BENCHMARK(BM_DexpInvSE3);

void BM_CaySE3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cay_se3({kX, kY}));
}
BENCHMARK(BM_CaySE3);

void BM_DcayInvSE3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dcay_inv_se3({kX, kY}));
}
BENCHMARK(BM_DcayInvSE3);

void BM_BchSO3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bch_so3(kX, kY));
}
BENCHMARK(BM_BchSO3);

void BM_ComposeAxisAngleRodrigues(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compose_axisangle_rodrigues(kX, kY));
}
BENCHMARK(BM_ComposeAxisAngleRodrigues);

}  // namespace
