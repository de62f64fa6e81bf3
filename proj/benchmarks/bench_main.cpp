#include <random>

#include <benchmark/benchmark.h>

#include "harmony/engine.hpp"
#include "harmony/quasilinear_exact.hpp"

using namespace harmony;

namespace {

std::vector<std::vector<Rational>> random_values(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(0, 100);
  std::vector<std::vector<Rational>> v(n, std::vector<Rational>(m));
  for (auto& row : v)
    for (auto& x : row) x = d(rng);
  return v;
}

Instance quasilinear(Mode mode, const std::vector<std::vector<Rational>>& v) {
  InstanceDraft d;
  d.mode = mode;
  Rational spread = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    d.agents.push_back({"a" + std::to_string(i), std::make_shared<QuasilinearOracle>(v[i])});
    auto [lo, hi] = std::minmax_element(v[i].begin(), v[i].end());
    spread = std::max<Rational>(spread, *hi - *lo);
  }
  for (std::size_t j = 0; j < v.front().size(); ++j) d.rooms.push_back({"r" + std::to_string(j), 1});
  d.total_rent = 100;
  d.compensation_bound = Rational(100 + spread);
  return validate_instance(std::move(d));
}

}  // namespace

static void BM_CellEnumeration(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::int64_t k = state.range(1);
  std::size_t count = 0;
  for (auto _ : state) {
    CellEnumerator it(m, k);
    count = 0;
    while (auto c = it.next()) ++count;
    benchmark::DoNotOptimize(count);
  }
  state.counters["cells"] = static_cast<double>(count);
}
BENCHMARK(BM_CellEnumeration)->Args({3, 64})->Args({4, 16})->Args({5, 8});

static void BM_TransportationFeasible(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  DemandGraph g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(i, i);
    for (std::size_t j = 0; j < n; ++j)
      if (rng() % 3 == 0) g.add_edge(i, j);
  }
  const MarginalPair marg{std::vector<Rational>(n, rational(1, static_cast<long>(n))),
                          std::vector<Rational>(n, rational(1, static_cast<long>(n)))};
  for (auto _ : state) benchmark::DoNotOptimize(transportation_feasible(g, marg));
}
BENCHMARK(BM_TransportationFeasible)->Arg(4)->Arg(8)->Arg(16);

static void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = random_values(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_assignment(v));
}
BENCHMARK(BM_Hungarian)->Arg(4)->Arg(8)->Arg(16);

static void BM_EngineSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = quasilinear(Mode::classic, random_values(n, n, 3));
  SolverConfig cfg;
  cfg.epsilon = rational(1, 10);
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg));
}
BENCHMARK(BM_EngineSolve)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ExactSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = quasilinear(Mode::classic, random_values(n, n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst));
}
BENCHMARK(BM_ExactSolve)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
