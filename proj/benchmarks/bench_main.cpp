#include "bqf/cycles.hpp"
#include "bqf/halfint.hpp"
#include "bqf/lharmonic.hpp"
#include "bqf/merforms.hpp"
#include "bqf/qforms.hpp"
#include "bqf/zeta.hpp"

#include <benchmark/benchmark.h>

using namespace bqf;

static void BM_ClassEnumeration(benchmark::State& st) {
  Int D = -static_cast<Int>(st.range(0));
  while (((D % 4) + 4) % 4 > 1) --D;
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_classes(D));
}
BENCHMARK(BM_ClassEnumeration)->Arg(1000)->Arg(20000)->Arg(200000);

static void BM_EvalFkP(benchmark::State& st) {
  auto pr = Precision::make(static_cast<unsigned>(st.range(0)), -25);
  PrecisionScope s(pr);
  FormClass P(QForm::unchecked(1, 1, 1));
  Complex z(Real("0.13"), Real("0.91"));
  for (auto _ : st) benchmark::DoNotOptimize(eval_fkP(P, 6, z, pr));
}
BENCHMARK(BM_EvalFkP)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_CycleIntegral(benchmark::State& st) {
  auto pr = Precision::make(128, -25);
  PrecisionScope s(pr);
  auto f = f_kD(-3, static_cast<int>(st.range(0)), pr);
  QForm A = QForm::unchecked(1, 0, -2);
  for (auto _ : st) benchmark::DoNotOptimize(cycle_integral(f, A, pr));
}
BENCHMARK(BM_CycleIntegral)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ZetaPartial(benchmark::State& st) {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  FormClass A(QForm::unchecked(1, 1, -1));
  for (auto _ : st) benchmark::DoNotOptimize(zeta_partial(A, 2, st.range(0), pr));
}
BENCHMARK(BM_ZetaPartial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_SalieSum(benchmark::State& st) {
  PrecisionScope s(Precision::table());
  Int a = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(salie_sum(a, 5, -3, 7));
}
BENCHMARK(BM_SalieSum)->Arg(10)->Arg(50)->Arg(200);

static void BM_LocallyHarmonic(benchmark::State& st) {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  FormClass A(QForm::unchecked(1, 1, -1));
  Complex t(Real("0.1"), Real("1.3"));
  for (auto _ : st) benchmark::DoNotOptimize(eval_F(static_cast<int>(st.range(0)), A, t, pr));
}
BENCHMARK(BM_LocallyHarmonic)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
