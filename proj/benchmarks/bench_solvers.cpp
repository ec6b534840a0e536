#include <benchmark/benchmark.h>

#include <random>

#include "cqot/example1.hpp"
#include "cqot/linf.hpp"
#include "cqot/solver_entropic.hpp"
#include "cqot/solver_exact.hpp"

namespace {

cqot::Problem random_problem(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cqot::Point> xs(n), ys(n);
  for (auto& p : xs) p = {u(rng), u(rng)};
  for (auto& p : ys) p = {u(rng), u(rng)};
  return {cqot::DiscreteMeasure::uniform(xs), cqot::DiscreteMeasure::uniform(ys),
          cqot::ConvexBody::ball({0.0, 0.0}, 1.5)};
}

void BM_ExactExample1Sampled(benchmark::State& state) {
  const auto pr = cqot::generate_example1(static_cast<std::size_t>(state.range(0)), 0.05, 0);
  for (auto _ : state) benchmark::DoNotOptimize(cqot::solve_exact(pr));
}
BENCHMARK(BM_ExactExample1Sampled)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ExactRandom(benchmark::State& state) {
  const auto pr = random_problem(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(cqot::solve_exact(pr));
}
BENCHMARK(BM_ExactRandom)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EntropicRandom(benchmark::State& state) {
  const auto pr = random_problem(static_cast<std::size_t>(state.range(0)), 2);
  cqot::EntropicOptions o;
  o.epsilon = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(cqot::solve_entropic(pr, o));
}
BENCHMARK(BM_EntropicRandom)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Linf(benchmark::State& state) {
  const auto pr = random_problem(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(cqot::solve_linf(pr.f0, pr.f1, pr.body));
}
BENCHMARK(BM_Linf)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
