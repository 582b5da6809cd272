#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hflmc/checker.hpp"
#include "hflmc/generate.hpp"
#include "hflmc/parity.hpp"

using namespace hflmc;

namespace {

const char* kRunningHes = R"(S =v <a> F (<b> S);
F =m \X. X \/ <c> S \/ <a> F (<b> X);
)";
const char* kRunningLts = R"(initial q0
q0 a q1
q1 b q2
q2 a q0
q0 c q0
)";

std::vector<Instance> instances(int eqs, int count) {
  std::mt19937_64 rng(1000 + eqs);
  GenOptions g;
  g.max_order = 2;
  g.max_equations = eqs;
  g.max_states = 3;
  g.max_depth = 4;
  std::vector<Instance> out;
  while (static_cast<int>(out.size()) < count) {
    Instance in = generate_instance(rng, g);
    if (static_cast<int>(in.hes.size()) == eqs) out.push_back(std::move(in));
  }
  return out;
}

void BM_RunningExample(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(check_text(kRunningHes, kRunningLts).verdict);
}
BENCHMARK(BM_RunningExample)->Unit(benchmark::kMicrosecond);

void BM_CheckByEquations(benchmark::State& st) {
  auto ins = instances(static_cast<int>(st.range(0)), 16);
  std::size_t size = 0;
  for (const auto& in : ins) size += check(in.lts, in.hes).report.hes_size;
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& in = ins[i++ % ins.size()];
    benchmark::DoNotOptimize(check(in.lts, in.hes).verdict);
  }
  st.counters["hes_size"] = static_cast<double>(size) / ins.size();
}
BENCHMARK(BM_CheckByEquations)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_CheckVsOracle(benchmark::State& st) {
  auto ins = instances(3, 16);
  CheckOptions opts;
  opts.naive_oracle = st.range(0) != 0;
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& in = ins[i++ % ins.size()];
    benchmark::DoNotOptimize(check(in.lts, in.hes, opts).verdict);
  }
  st.SetLabel(opts.naive_oracle ? "oracle" : "saturation");
}
BENCHMARK(BM_CheckVsOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

ParityGame random_arena(int n) {
  std::mt19937_64 rng(static_cast<unsigned>(n));
  ParityGame g;
  for (int v = 0; v < n; ++v)
    g.add_vertex(static_cast<int>(rng() % 2), static_cast<int>(rng() % 8));
  for (int v = 0; v < n; ++v) {
    int d = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < d; ++k) g.add_edge(v, static_cast<int>(rng() % n));
  }
  return g;
}

void BM_Zielonka(benchmark::State& st) {
  ParityGame g = random_arena(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_zielonka(g).winner.data());
}
BENCHMARK(BM_Zielonka)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMicrosecond);

void BM_Spm(benchmark::State& st) {
  ParityGame g = random_arena(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_spm(g).data());
}
BENCHMARK(BM_Spm)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
