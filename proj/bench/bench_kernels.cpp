// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "interf/elements.hpp"
#include "interf/kernels.hpp"

using namespace interf;

namespace {

std::vector<Element2> elements(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Element2> out(n);
  for (auto& g : out) g = rotator(3 * u(rng)) * squeezer(u(rng)) * phase_shifter(3 * u(rng));
  return out;
}

std::vector<StokesVector> states(std::size_t n) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<StokesVector> out(n);
  for (auto& s : out) {
    const double x = u(rng), y = u(rng), z = u(rng);
    s = {2.0 + std::abs(u(rng)), x, y, z};
  }
  return out;
}

template <auto Kernel>
void BM_apply(benchmark::State& st) {
  const auto in = states(static_cast<std::size_t>(st.range(0)));
  std::vector<StokesVector> out(in.size());
  const Transform4 t = lift(elements(1)[0]);
  for (auto _ : st) {
    Kernel(t, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Kernel>
void BM_lift_all(benchmark::State& st) {
  const auto in = elements(static_cast<std::size_t>(st.range(0)));
  std::vector<Transform4> out(in.size());
  for (auto _ : st) {
    Kernel(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Kernel>
void BM_propagate(benchmark::State& st) {
  const auto chain = elements(10);
  const auto s = states(static_cast<std::size_t>(st.range(0)));
  std::vector<CoherencyMatrix> in(s.size()), out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) in[i] = coherency_from_stokes(s[i]);
  for (auto _ : st) {
    Kernel(chain, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Kernel>
void BM_classify_all(benchmark::State& st) {
  const auto in = states(static_cast<std::size_t>(st.range(0)));
  std::vector<StateClass> out(in.size());
  for (auto _ : st) {
    Kernel(in, out, kClassifyTol);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_apply<kernels::serial::apply>)->Name("apply/serial")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_apply<kernels::parallel::apply>)->Name("apply/parallel")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_lift_all<kernels::serial::lift_all>)->Name("lift_all/serial")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_lift_all<kernels::parallel::lift_all>)->Name("lift_all/parallel")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_propagate<kernels::serial::propagate>)->Name("propagate/serial")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_propagate<kernels::parallel::propagate>)->Name("propagate/parallel")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_classify_all<kernels::serial::classify_all>)->Name("classify_all/serial")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_classify_all<kernels::parallel::classify_all>)->Name("classify_all/parallel")->Range(1 << 10, 1 << 18);

BENCHMARK_MAIN();
