// Serial reference vs OpenMP kernels.  Run with --benchmark_counters_tabular=true.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <vector>

#include "landau/eigensolver.hpp"
#include "landau/operators.hpp"

using namespace landau;

namespace {

Grid2D square(int n) { return Grid2D({-8, 8, -8, 8}, n, n); }

std::vector<cdouble> gaussian(const Grid2D& g) {
  std::vector<cdouble> v(g.size());
  kernels::serial::sample(g, [](double x, double y) { return std::exp(cdouble(-0.5 * (x * x + y * y), 0.3 * x)); }, v);
  return v;
}

void set_counters(benchmark::State& state, const Grid2D& g) {
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_HamiltonianSerial(benchmark::State& state) {
  const Grid2D g = square(state.range(0));
  const auto st = build_stencil(make_operator(OperatorKind::Hamiltonian, natural_units()), g);
  const auto in = gaussian(g);
  std::vector<cdouble> out(g.size());
  for (auto _ : state) {
    st.apply_serial(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, g);
}

void BM_HamiltonianParallel(benchmark::State& state) {
  const Grid2D g = square(state.range(0));
  const auto st = build_stencil(make_operator(OperatorKind::Hamiltonian, natural_units()), g);
  const auto in = gaussian(g);
  std::vector<cdouble> out(g.size());
  for (auto _ : state) {
    st.apply(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, g);
}

void BM_SampleSerial(benchmark::State& state) {
  const Grid2D g = square(state.range(0));
  std::vector<cdouble> out(g.size());
  auto f = [](double x, double y) { return std::exp(cdouble(-0.5 * (x * x + y * y), x * y)); };
  for (auto _ : state) {
    kernels::serial::sample(g, f, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, g);
}

void BM_SampleParallel(benchmark::State& state) {
  const Grid2D g = square(state.range(0));
  std::vector<cdouble> out(g.size());
  auto f = [](double x, double y) { return std::exp(cdouble(-0.5 * (x * x + y * y), x * y)); };
  for (auto _ : state) {
    kernels::parallel::sample(g, f, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(state, g);
}

void BM_InnerSerial(benchmark::State& state) {
  const Grid2D g = square(state.range(0));
  const auto a = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::trapezoid_inner(g, a, a));
  set_counters(state, g);
}

void BM_InnerParallel(benchmark::State& state) {
  const Grid2D g = square(state.range(0));
  const auto a = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::trapezoid_inner(g, a, a));
  set_counters(state, g);
}

void BM_Spectrum(benchmark::State& state) {
  const Grid2D g = square(state.range(0));
  SpectrumOptions opt;
  opt.n_eigs = 8;
  opt.tolerance = 1e-6;
  for (auto _ : state) {
    const auto r = spectrum(natural_units(), Gauge::LandauX, g, opt);
    benchmark::DoNotOptimize(r.eigenvalues.data());
    state.counters["matvecs"] = static_cast<double>(r.matvecs);
  }
}

}  // namespace

BENCHMARK(BM_HamiltonianSerial)->Arg(257)->Arg(1025)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HamiltonianParallel)->Arg(257)->Arg(1025)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleSerial)->Arg(1025)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(1025)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_InnerSerial)->Arg(1025)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InnerParallel)->Arg(1025)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Spectrum)->Arg(65)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(3);

BENCHMARK_MAIN();
