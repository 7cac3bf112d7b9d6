#include <benchmark/benchmark.h>

#include "regclose/closure.hpp"

using namespace regclose;

static void BM_enumerate_spaces(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto v = enumerate_spaces(n, kHardMaxPoints);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_enumerate_spaces)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

static void BM_canonical_form(benchmark::State& state) {
  FinSpace x = product(FinSpace::sierpinski(), FinSpace::sierpinski()).space;
  for (auto _ : state) {
    auto s = canonical_form(x);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_canonical_form);

static void BM_hom_set(benchmark::State& state) {
  FinSpace d = FinSpace::discrete(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto v = hom_graphs(d, d);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_hom_set)->Arg(3)->Arg(4)->Arg(5);

static void BM_closure_formula(benchmark::State& state) {
  SubcatSpec t0 = SubcatSpec::t0();
  FinSpace d4 = FinSpace::discrete(4);
  Preorder prod = Preorder::product(d4.preorder(), d4.preorder());
  Mask diag = 0;
  for (int i = 0; i < 4; ++i) diag |= bit(i * 4 + i);
  for (auto _ : state) {
    Mask c = closure_formula_carrier(prod, diag, t0);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_closure_formula);

static void BM_closure_bruteforce(benchmark::State& state) {
  SubcatSpec t0 = SubcatSpec::t0();
  FinSpace i2 = FinSpace::indiscrete(2);
  for (auto _ : state) {
    Workspace ws;
    auto r = closure_bruteforce(Subobject{i2, 1}, t0, ws);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_closure_bruteforce);

static void BM_closure_table(benchmark::State& state) {
  SubcatSpec t0 = SubcatSpec::t0();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Workspace ws;
    auto uni = ws.universe(n);
    auto t = closure_operator_table(t0, uni, ws);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_closure_table)->Arg(3)->Arg(4);

static void BM_thm41_sweep(benchmark::State& state) {
  SubcatSpec t0 = SubcatSpec::t0();
  SubcatSpec ind = SubcatSpec::indiscrete();
  for (auto _ : state) {
    Workspace ws;
    auto uni = ws.universe(3);
    auto rep = thm41_sweep(t0, ind, uni, ws);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_thm41_sweep);

BENCHMARK_MAIN();
