#include <benchmark/benchmark.h>

#include "lll/checker.hpp"
#include "lll/desk.hpp"
#include "lll/instances.hpp"
#include "lll/measure.hpp"

namespace {

std::vector<std::uint32_t> range(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> v;
  for (auto i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// Joint measure of two overlapping monochromatic events by support projection.
void BM_JointProjection(benchmark::State& state) {
  const auto width = static_cast<std::uint32_t>(state.range(0));
  const auto space = lll::VariableSpace::uniform(400, 2);
  const auto a = lll::BadEvent::monochromatic("a", range(0, width - 1));
  const auto b = lll::BadEvent::monochromatic("b", range(width / 2, width / 2 + width - 1));
  const std::vector<lll::EventTerm> terms{lll::EventTerm::of(a), lll::EventTerm::of(b)};
  for (auto _ : state) benchmark::DoNotOptimize(lll::joint_measure(space, terms));
}

void BM_StructuralDegrees(benchmark::State& state) {
  const auto inst = lll::gen_circle(100, 16, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(lll::dependency_degrees(inst, lll::DependencyMode::Structural).max_degree());
}

void BM_CheckSymmetricFirm(benchmark::State& state) {
  const auto inst = lll::gen_firm({}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lll::check_symmetric(inst).applicable);
}

void BM_InductionDesk(benchmark::State& state) {
  const auto inst = lll::gen_desk_symmetric(static_cast<std::uint64_t>(state.range(0)));
  const auto d = lll::check_symmetric(inst).d.value();
  for (auto _ : state) benchmark::DoNotOptimize(lll::induction_certificate(inst, d).all_hold());
}

void BM_ExhaustiveDesk(benchmark::State& state) {
  const auto inst = lll::gen_desk_symmetric(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(lll::dependency_degrees(inst, lll::DependencyMode::Exhaustive).max_degree());
}

}  // namespace

BENCHMARK(BM_JointProjection)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK(BM_StructuralDegrees);
BENCHMARK(BM_CheckSymmetricFirm);
BENCHMARK(BM_InductionDesk)->Arg(1)->Arg(2)->Arg(3);
BENCHMARK(BM_ExhaustiveDesk)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
