#include "qsnn/qcore/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace qsnn::qcore::kernels {

namespace {

using Index = std::int64_t;

inline std::uint64_t bit(std::size_t n, std::size_t qubit) {
  return std::uint64_t{1} << (n - 1 - qubit);
}

/// Spreads `p` so that a zero bit sits at position `pos`.
inline std::uint64_t insert_zero(std::uint64_t p, std::size_t pos) {
  const std::uint64_t low = p & ((std::uint64_t{1} << pos) - 1);
  return ((p >> pos) << (pos + 1)) | low;
}

}  // namespace

void apply_single(std::span<Complex> amps, std::size_t n, std::size_t qubit, const Gate2& g) {
  const std::size_t pos = n - 1 - qubit;
  const std::uint64_t mask = std::uint64_t{1} << pos;
  const Index pairs = static_cast<Index>(amps.size() / 2);
  const double g00r = g(0, 0).real(), g00i = g(0, 0).imag(), g01r = g(0, 1).real(), g01i = g(0, 1).imag();
  const double g10r = g(1, 0).real(), g10i = g(1, 0).imag(), g11r = g(1, 1).real(), g11i = g(1, 1).imag();
  // interleaved re/im view; spelled out because std::complex's multiply
  // carries a NaN-recovery branch that blocks vectorization
  double* a = reinterpret_cast<double*>(amps.data());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index p = 0; p < pairs; ++p) {
    const std::uint64_t i0 = 2 * insert_zero(static_cast<std::uint64_t>(p), pos);
    const std::uint64_t i1 = i0 + 2 * mask;
    const double r0 = a[i0], m0 = a[i0 + 1], r1 = a[i1], m1 = a[i1 + 1];
    a[i0] = g00r * r0 - g00i * m0 + g01r * r1 - g01i * m1;
    a[i0 + 1] = g00r * m0 + g00i * r0 + g01r * m1 + g01i * r1;
    a[i1] = g10r * r0 - g10i * m0 + g11r * r1 - g11i * m1;
    a[i1 + 1] = g10r * m0 + g10i * r0 + g11r * m1 + g11i * r1;
  }
}

void apply_controlled_phase(std::span<Complex> amps, std::size_t n, std::size_t control,
                            std::size_t target, Complex phase) {
  const std::uint64_t both = bit(n, control) | bit(n, target);
  const Index dim = static_cast<Index>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index i = 0; i < dim; ++i) {
    if ((static_cast<std::uint64_t>(i) & both) == both) amps[i] *= phase;
  }
}

void apply_controlled_swap(std::span<Complex> amps, std::size_t n, std::size_t control,
                           std::size_t a, std::size_t b) {
  const std::uint64_t c = bit(n, control);
  const std::uint64_t ma = bit(n, a);
  const std::uint64_t mb = bit(n, b);
  const Index dim = static_cast<Index>(amps.size());
  // visit each exchanged pair once, from its (a=1, b=0) member
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index ii = 0; ii < dim; ++ii) {
    const auto i = static_cast<std::uint64_t>(ii);
    if ((i & c) && (i & ma) && !(i & mb)) {
      const std::uint64_t j = (i & ~ma) | mb;
      std::swap(amps[i], amps[j]);
    }
  }
}

void swap_qubits(std::span<Complex> amps, std::size_t n, std::size_t a, std::size_t b) {
  const std::uint64_t ma = bit(n, a);
  const std::uint64_t mb = bit(n, b);
  const Index dim = static_cast<Index>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (Index ii = 0; ii < dim; ++ii) {
    const auto i = static_cast<std::uint64_t>(ii);
    if ((i & ma) && !(i & mb)) std::swap(amps[i], amps[(i & ~ma) | mb]);
  }
}

void apply_on_span(std::span<Complex> amps, std::size_t n, QubitSpan span, const Matrix& u,
                   std::optional<std::size_t> control) {
  const std::size_t low = n - span.end();  // bit position of the span's last qubit
  const std::uint64_t sdim = span.dim();
  const Index rest = static_cast<Index>(amps.size() / sdim);
  const std::uint64_t cmask = control ? bit(n, *control) : 0;

#pragma omp parallel if (amps.size() >= kParallelThreshold)
  {
    std::vector<Complex> in(sdim), out(sdim);
#pragma omp for schedule(static)
    for (Index r = 0; r < rest; ++r) {
      const auto ur = static_cast<std::uint64_t>(r);
      const std::uint64_t lo = ur & ((std::uint64_t{1} << low) - 1);
      const std::uint64_t base = ((ur >> low) << (low + span.length)) | lo;
      if (cmask != 0 && (base & cmask) == 0) continue;
      for (std::uint64_t v = 0; v < sdim; ++v) in[v] = amps[base | (v << low)];
      for (std::uint64_t row = 0; row < sdim; ++row) {
        Complex acc{0.0, 0.0};
        for (std::uint64_t col = 0; col < sdim; ++col) {
          acc += u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * in[col];
        }
        out[row] = acc;
      }
      for (std::uint64_t v = 0; v < sdim; ++v) amps[base | (v << low)] = out[v];
    }
  }
}

std::vector<double> span_marginals(std::span<const Complex> amps, std::size_t n, QubitSpan span) {
  const std::size_t low = n - span.end();
  const std::uint64_t sdim = span.dim();
  const std::uint64_t rest = amps.size() / sdim;
  std::vector<double> probs(sdim, 0.0);
  const bool parallel = amps.size() >= kParallelThreshold;

  if (sdim >= 64 || !parallel) {
    // one output entry per iteration: each sum has a fixed order
#pragma omp parallel for schedule(static) if (parallel)
    for (Index v = 0; v < static_cast<Index>(sdim); ++v) {
      double acc = 0.0;
      for (std::uint64_t r = 0; r < rest; ++r) {
        const std::uint64_t lo = r & ((std::uint64_t{1} << low) - 1);
        const std::uint64_t base = ((r >> low) << (low + span.length)) | lo;
        acc += std::norm(amps[base | (static_cast<std::uint64_t>(v) << low)]);
      }
      probs[static_cast<std::size_t>(v)] = acc;
    }
    return probs;
  }

  // Few outcomes, many amplitudes: fixed chunking of the index range, then
  // an ordered reduction of the chunk partials.
  constexpr Index kChunks = 64;
  const Index dim = static_cast<Index>(amps.size());
  const Index chunk = dim / kChunks;
  std::vector<double> partial(static_cast<std::size_t>(kChunks) * sdim, 0.0);
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < kChunks; ++c) {
    double* mine = partial.data() + c * static_cast<Index>(sdim);
    const Index end = (c == kChunks - 1) ? dim : (c + 1) * chunk;
    for (Index i = c * chunk; i < end; ++i) {
      mine[(static_cast<std::uint64_t>(i) >> low) & (sdim - 1)] += std::norm(amps[i]);
    }
  }
  for (Index c = 0; c < kChunks; ++c) {
    for (std::uint64_t v = 0; v < sdim; ++v) probs[v] += partial[c * sdim + v];
  }
  return probs;
}

}  // namespace qsnn::qcore::kernels
