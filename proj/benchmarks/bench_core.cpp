#include <benchmark/benchmark.h>

#include "plusfact/constructions.hpp"
#include "plusfact/octonions.hpp"
#include "plusfact/spinlift.hpp"

using namespace plusfact;

static void BM_FieldMul(benchmark::State& st) {
  auto F = Field::make(2, static_cast<uint32_t>(st.range(0)));
  Elt a = 3, b = 5;
  for (auto _ : st) {
    a = F->mul(a, b) | 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(16)->Arg(20);

// Chain of Omega_{2m}^+(2) without a trusted order.
static void BM_OmegaChain(benchmark::State& st) {
  QuadSpace V(Field::make(2, 1), static_cast<int>(st.range(0)));
  auto gens = build_omega(V).generators();
  for (auto _ : st) {
    GroupHandle G(V.field_ptr(), V.dim(), gens);
    benchmark::DoNotOptimize(G.order());
  }
}
BENCHMARK(BM_OmegaChain)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_NonsingularOrbit(benchmark::State& st) {
  QuadSpace V(Field::make(2, 1), static_cast<int>(st.range(0)));
  auto G = build_omega(V);
  Vec w = V.parse("e1+f1");
  for (auto _ : st) benchmark::DoNotOptimize(G.orbit(w).size());
}
BENCHMARK(BM_NonsingularOrbit)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SpinCopy(benchmark::State& st) {
  QuadSpace V(Field::make(2, 1), 4);
  for (auto _ : st) benchmark::DoNotOptimize(spin_copy(7, V).order());
}
BENCHMARK(BM_SpinCopy)->Unit(benchmark::kMillisecond);

static void BM_G2(benchmark::State& st) {
  auto F = Field::make(2, static_cast<uint32_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(g2_handle(F, build_G2(F)).order());
}
BENCHMARK(BM_G2)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Spin9Meet(benchmark::State& st) {
  QuadSpace V(Field::make(2, 1), 8);
  for (auto _ : st) {
    auto S = spin_copy(9, V);
    benchmark::DoNotOptimize(S.orbit(V.parse("e1+f1")).size());
  }
}
BENCHMARK(BM_Spin9Meet)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
