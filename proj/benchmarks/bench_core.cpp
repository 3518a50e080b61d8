#include <benchmark/benchmark.h>

#include "spinlimit/dimer.hpp"
#include "spinlimit/gibbs.hpp"
#include "spinlimit/spinwalks.hpp"
#include "spinlimit/symbols.hpp"

using namespace spinlimit;

static void BM_EnumerateWalks(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_walks(n));
}
BENCHMARK(BM_EnumerateWalks)->DenseRange(6, 12, 2);

static void BM_SymbolWalks(benchmark::State& state) {
  const AxisMonomial m({Axis::X, Axis::Y, Axis::X, Axis::Z, Axis::Y, Axis::Z});
  const int two_s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monomial_symbol_walks(m, 1.1, 0.4, two_s));
}
BENCHMARK(BM_SymbolWalks)->Arg(1)->Arg(9)->Arg(40);

static void BM_SymbolDirect(benchmark::State& state) {
  const AxisMonomial m({Axis::X, Axis::Y, Axis::X, Axis::Z, Axis::Y, Axis::Z});
  const SpinRep rep(static_cast<int>(state.range(0)));
  const PhasePoint p = PhasePoint::single(1.1, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(monomial_symbol_direct(m.on_site(), p, rep));
}
BENCHMARK(BM_SymbolDirect)->Arg(1)->Arg(9)->Arg(40);

static void BM_HermitianExp(benchmark::State& state) {
  const SpinRep rep(static_cast<int>(state.range(0)), 2);
  const Operator h = quantum_hamiltonian(heisenberg_dimer(), rep);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_exp(h, -1.0));
  state.SetLabel("dim " + std::to_string(rep.dim()));
}
BENCHMARK(BM_HermitianExp)->Arg(4)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_DimerClosedForm(benchmark::State& state) {
  const int two_s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dimer_symbol_closed(two_s, 1.0, 2.0));
}
BENCHMARK(BM_DimerClosedForm)->Arg(2)->Arg(40)->Arg(400);

static void BM_ContravariantMatrix(benchmark::State& state) {
  const SpinRep rep(static_cast<int>(state.range(0)));
  const ContravariantInput f{[](const PhasePoint& p) { return cplx(p.cartesian(0)[2] * p.cartesian(0)[2]); }, 2, {}};
  for (auto _ : state) benchmark::DoNotOptimize(contravariant_matrix(f, rep));
}
BENCHMARK(BM_ContravariantMatrix)->Arg(2)->Arg(8);

BENCHMARK_MAIN();
