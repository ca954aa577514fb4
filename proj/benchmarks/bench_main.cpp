#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "quasilevel/quasilevel.hpp"
#include "quasilevel/wave_rows.hpp"

using namespace quasilevel;

namespace {

constexpr double kT = 2.0 * std::numbers::pi;

void BM_eval_V(benchmark::State& state) {
  const PotentialSpec s(1, 1, Degrees{45}, {0.3, 0.7});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-100, 100);
  std::vector<Vec2> pts(4096);
  for (Vec2& p : pts) p = {d(rng), d(rng)};
  for (auto _ : state) {
    double sum = 0.0;
    for (const Vec2& p : pts) sum += eval_V(p, s);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_eval_V);

void BM_wave_rows(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = plane_waves(PotentialSpec(1, 1, Degrees{45}));
  const WaveRowEvaluator eval({w.begin(), w.end()}, {0, 0}, kT / 32, n);
  std::vector<double> row(static_cast<std::size_t>(n));
  int j = 0;
  for (auto _ : state) {
    eval.row(j++, row.data());
    benchmark::DoNotOptimize(row.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_wave_rows)->Arg(1024)->Arg(16384);

GridField eightfold_grid(int n) {
  return sample_grid(PotentialSpec(1, 1, Degrees{45}, {0.37, 1.21}), Window::centered({0, 0}, n * kT / 32), kT / 32,
                     BoundaryMode::open_window);
}

void BM_label_grid(benchmark::State& state) {
  const GridField f = eightfold_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(label_grid(f, 0.25, LevelSign::above));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_label_grid)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_streaming_labeler(benchmark::State& state) {
  const GridField f = eightfold_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    StreamingLabeler l(f.nx, f.ny, f.spacing, 0.25, LevelSign::above);
    for (int j = 0; j < f.ny; ++j) l.push_row(&f.values[f.index(0, j)]);
    benchmark::DoNotOptimize(l.finish());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_streaming_labeler)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_calipers(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> d(-100000, 100000);
  std::vector<IPoint> pts(static_cast<std::size_t>(state.range(0)));
  for (IPoint& p : pts) p = {d(rng), d(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(diameter2(pts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_calipers)->Arg(1000)->Arg(100000);

void BM_singular_net(benchmark::State& state) {
  const MagicAngle a = make_magic_angle(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(extract_singular_net(a, {0, 0}, a.T() / 32));
}
BENCHMARK(BM_singular_net)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
