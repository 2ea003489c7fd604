#include <benchmark/benchmark.h>

#include "subcap/capacity.hpp"
#include "subcap/channel.hpp"
#include "subcap/mac_region.hpp"
#include "subcap/qcount.hpp"
#include "subcap/subspace.hpp"

using namespace subcap;

namespace {

void BM_FieldConstruct256(benchmark::State& state) {
  for (auto _ : state) {
    Field f(2, 8);
    benchmark::DoNotOptimize(f.q());
  }
}
BENCHMARK(BM_FieldConstruct256);

void BM_Rref(benchmark::State& state) {
  const Field f = Field::of_order(state.range(0));
  Rng rng(17);
  const Matrix m = random_matrix(16, 32, f, rng);
  for (auto _ : state) {
    auto rr = rref(m);
    benchmark::DoNotOptimize(rr.rank);
  }
}
BENCHMARK(BM_Rref)->Arg(2)->Arg(16)->Arg(256);

void BM_SubspaceSumIntersect(benchmark::State& state) {
  const Field f(2, 1);
  Rng rng(5);
  const Subspace a = random_subspace(f, 12, 5, rng);
  const Subspace b = random_subspace(f, 12, 5, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum(a, b).dim());
    benchmark::DoNotOptimize(intersection(a, b).dim());
  }
}
BENCHMARK(BM_SubspaceSumIntersect);

void BM_Grassmannian(benchmark::State& state) {
  const Field f(3, 1);
  for (auto _ : state) {
    auto all = grassmannian(f, 4, 2);
    benchmark::DoNotOptimize(all.size());
  }
}
BENCHMARK(BM_Grassmannian);

void BM_GaussianExact(benchmark::State& state) {
  for (auto _ : state) {
    auto g = gaussian(14, 7, state.range(0));
    benchmark::DoNotOptimize(g.log2);
  }
}
BENCHMARK(BM_GaussianExact)->Arg(2)->Arg(1 << 16);

void BM_MutualInfo(benchmark::State& state) {
  const ChannelParams p{16, 14, 11, 7};
  std::vector<double> alpha(p.delta() + 1, 1.0 / (p.delta() + 1));
  for (auto _ : state) benchmark::DoNotOptimize(mutual_info(alpha, p));
}
BENCHMARK(BM_MutualInfo);

void BM_OptimizeTiny(benchmark::State& state) {
  for (auto _ : state) {
    auto res = optimize_capacity({2, 2, 1, 1});
    benchmark::DoNotOptimize(res.capacity_bits);
  }
}
BENCHMARK(BM_OptimizeTiny);

void BM_OptimizeFig1(benchmark::State& state) {
  for (auto _ : state) {
    auto res = optimize_capacity({16, 14, 11, 7});
    benchmark::DoNotOptimize(res.capacity_bits);
  }
}
BENCHMARK(BM_OptimizeFig1);

void BM_BruteMutualInfo(benchmark::State& state) {
  const ChannelParams p{2, 3, 2, 2};
  std::vector<double> px(64, 1.0 / 64);
  for (auto _ : state) benchmark::DoNotOptimize(brute_mutual_info(px, p));
}
BENCHMARK(BM_BruteMutualInfo);

void BM_ColorTable(benchmark::State& state) {
  const Field f(2, 1);
  const auto c1 = grassmannian(f, 5, 2);
  for (auto _ : state) {
    auto table = build_color_table(c1, c1);
    benchmark::DoNotOptimize(table.distinct_colors);
  }
}
BENCHMARK(BM_ColorTable);

void BM_MacAchievability(benchmark::State& state) {
  const MacParams p{16, 12, 4, 2, 2};
  Rng rng(23);
  for (auto _ : state) benchmark::DoNotOptimize(achievability_sim(2, 2, p, 100, rng));
}
BENCHMARK(BM_MacAchievability);

void BM_ChannelStep(benchmark::State& state) {
  const ChannelParams p{256, 16, 8, 8};
  const Field f = p.field();
  Rng rng(3);
  const Matrix x = random_matrix(8, 16, f, rng);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_channel_step(x, p, rng).rows());
}
BENCHMARK(BM_ChannelStep);

}  // namespace

BENCHMARK_MAIN();
