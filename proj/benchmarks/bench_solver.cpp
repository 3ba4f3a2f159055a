#include <benchmark/benchmark.h>

#include "lll/dimacs.hpp"
#include "lll/instances.hpp"
#include "lll/solver.hpp"

namespace {

void run(benchmark::State& state, const lll::ProductInstance& inst) {
  std::uint64_t seed = 0, resamples = 0;
  for (auto _ : state) {
    const auto r = lll::solve_resample(inst, {.seed = seed++, .budget = {}, .d = inst.declared_d, .record_trace = false});
    resamples += r.resample_count;
    benchmark::DoNotOptimize(r.assignment.data());
  }
  state.counters["resamples"] = benchmark::Counter(static_cast<double>(resamples), benchmark::Counter::kAvgIterations);
}

void BM_SolveFirm(benchmark::State& state) { run(state, lll::gen_firm({}, 1)); }
void BM_SolveCircle(benchmark::State& state) { run(state, lll::gen_circle(100, 16, 1)); }
void BM_SolveVdw(benchmark::State& state) { run(state, lll::gen_vdw(39, 12)); }

void BM_SolveKsat(benchmark::State& state) {
  const auto vars = static_cast<std::uint32_t>(state.range(0));
  run(state, lll::cnf_to_instance(lll::gen_ksat(vars, vars / 3, 5, 1)));
}

void BM_SolveLatin(benchmark::State& state) {
  const auto inst = lll::gen_latin(static_cast<std::uint32_t>(state.range(0)), 2, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto r = lll::solve_permutation(inst, {.seed = seed++, .budget = {}, .d = {}, .record_trace = false});
    benchmark::DoNotOptimize(r.assignment.data());
  }
}

}  // namespace

BENCHMARK(BM_SolveFirm);
BENCHMARK(BM_SolveCircle);
BENCHMARK(BM_SolveVdw);
BENCHMARK(BM_SolveKsat)->Arg(300)->Arg(3000)->Arg(30000);
BENCHMARK(BM_SolveLatin)->Arg(33)->Arg(65);

BENCHMARK_MAIN();
