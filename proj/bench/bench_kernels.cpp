// Parallel kernels against the serial reference on the same states.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qsnn/common/random.hpp"
#include "qsnn/qcore/kernels.hpp"
#include "qsnn/quip/analytic.hpp"

using namespace qsnn;
using namespace qsnn::qcore;

namespace {

std::vector<Complex> random_amplitudes(std::size_t n) {
  Rng rng = make_stream(1, n);
  std::vector<Complex> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& x : v) {
    x = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

Gate2 hadamard() {
  const double h = std::numbers::sqrt2 / 2;
  Gate2 g;
  g << h, h, h, -h;
  return g;
}

template <void (*F)(std::span<Complex>, std::size_t, std::size_t, const Gate2&)>
void single(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto amps = random_amplitudes(n);
  const Gate2 g = hadamard();
  for (auto _ : st) {
    for (std::size_t q = 0; q < n; ++q) F(amps, n, q, g);
    benchmark::DoNotOptimize(amps.data());
  }
  st.SetItemsProcessed(st.iterations() * std::int64_t(n) * std::int64_t(amps.size()));
}

template <void (*F)(std::span<Complex>, std::size_t, std::size_t, std::size_t, std::size_t)>
void cswap(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto amps = random_amplitudes(n);
  for (auto _ : st) {
    for (std::size_t q = 1; q + 1 < n; q += 2) F(amps, n, 0, q, q + 1);
    benchmark::DoNotOptimize(amps.data());
  }
}

template <void (*F)(std::span<Complex>, std::size_t, QubitSpan, const Matrix&, std::optional<std::size_t>)>
void on_span(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto amps = random_amplitudes(n);
  const Matrix u = Matrix::Identity(8, 8) * Complex(0, 1);
  for (auto _ : st) {
    F(amps, n, {n - 3, 3}, u, std::optional<std::size_t>{0});
    benchmark::DoNotOptimize(amps.data());
  }
}

template <std::vector<double> (*F)(std::span<const Complex>, std::size_t, QubitSpan)>
void marginals(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto amps = random_amplitudes(n);
  for (auto _ : st) benchmark::DoNotOptimize(F(amps, n, {0, n / 2}));
}

void analytic_distribution(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(quip::outcome_distribution(0.3, m));
}

}  // namespace

BENCHMARK(single<kernels::apply_single>)->Name("single/parallel")->DenseRange(12, 20, 4);
BENCHMARK(single<reference::apply_single>)->Name("single/reference")->DenseRange(12, 20, 4);
BENCHMARK(cswap<kernels::apply_controlled_swap>)->Name("cswap/parallel")->DenseRange(12, 20, 4);
BENCHMARK(cswap<reference::apply_controlled_swap>)->Name("cswap/reference")->DenseRange(12, 20, 4);
BENCHMARK(on_span<kernels::apply_on_span>)->Name("on_span/parallel")->DenseRange(12, 20, 4);
BENCHMARK(on_span<reference::apply_on_span>)->Name("on_span/reference")->DenseRange(12, 20, 4);
BENCHMARK(marginals<kernels::span_marginals>)->Name("marginals/parallel")->DenseRange(12, 20, 4);
BENCHMARK(marginals<reference::span_marginals>)->Name("marginals/reference")->DenseRange(12, 20, 4);
BENCHMARK(analytic_distribution)->DenseRange(8, 12, 2);

BENCHMARK_MAIN();
