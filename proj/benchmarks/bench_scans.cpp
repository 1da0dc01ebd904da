#include <benchmark/benchmark.h>

#include "symdyn/extension.hpp"
#include "symdyn/graphspeedup.hpp"
#include "symdyn/lr.hpp"
#include "symdyn/shiftspaces.hpp"
#include "symdyn/speedup.hpp"

using namespace symdyn;

namespace {

OrbitSegment fib(std::size_t n) { return fixed_point_prefix(Substitution::fibonacci(), 0, n); }

void BM_FixedPoint(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fib(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FixedPoint)->Arg(10000)->Arg(100000);

void BM_Complexity(benchmark::State& state) {
  const auto seg = fib(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(complexity(seg, 25));
}
BENCHMARK(BM_Complexity)->Arg(10000)->Arg(100000);

void BM_LandingMap(benchmark::State& state) {
  const auto seg = fib(100000);
  const auto jump = first_return_jump(seg, 3);
  for (auto _ : state) benchmark::DoNotOptimize(landing_map(seg, jump));
}
BENCHMARK(BM_LandingMap);

void BM_RecurrenceProfile(benchmark::State& state) {
  const auto seg = fib(100000);
  for (auto _ : state) benchmark::DoNotOptimize(recurrence_profile(seg, 20));
}
BENCHMARK(BM_RecurrenceProfile);

void BM_SpeedupProfile(benchmark::State& state) {
  const auto seg = fib(100000);
  const auto jump = JumpFunction::constant(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(speedup_recurrence_profile(seg, jump, 15));
}
BENCHMARK(BM_SpeedupProfile)->Arg(2)->Arg(3);

void BM_ExtensionTrace(benchmark::State& state) {
  const auto seg = fib(100000);
  const auto w = Word::parse(seg.alphabet(), "1001");
  for (auto _ : state) benchmark::DoNotOptimize(GroupExtension(seg, JumpFunction::constant(3), w, EntryMode::relaxed));
}
BENCHMARK(BM_ExtensionTrace);

void BM_SpeedupSft(benchmark::State& state) {
  const auto g = std::get<SftPresentation>(parse_presentation("vertex 0\nvertex 1\nedge 0 0\nedge 0 1\nedge 1 0\n"));
  const auto jump = JumpFunction::constant(2);
  for (auto _ : state) {
    const auto sped = speedup_sft(g, jump);
    benchmark::DoNotOptimize(language_of_presentation(sped, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_SpeedupSft)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
