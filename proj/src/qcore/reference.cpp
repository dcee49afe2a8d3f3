#include <cstdint>

#include "qsnn/qcore/kernels.hpp"

namespace qsnn::qcore::reference {

namespace {

inline bool test_bit(std::uint64_t i, std::size_t n, std::size_t qubit) {
  return (i >> (n - 1 - qubit)) & 1U;
}

inline std::uint64_t flip(std::uint64_t i, std::size_t n, std::size_t qubit) {
  return i ^ (std::uint64_t{1} << (n - 1 - qubit));
}

inline std::uint64_t span_value(std::uint64_t i, std::size_t n, QubitSpan span) {
  return (i >> (n - span.end())) & (span.dim() - 1);
}

inline std::uint64_t with_span_value(std::uint64_t i, std::size_t n, QubitSpan span,
                                     std::uint64_t v) {
  const std::size_t low = n - span.end();
  const std::uint64_t mask = (span.dim() - 1) << low;
  return (i & ~mask) | (v << low);
}

}  // namespace

void apply_single(std::span<Complex> amps, std::size_t n, std::size_t qubit, const Gate2& g) {
  std::vector<Complex> out(amps.size());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const int row = test_bit(i, n, qubit) ? 1 : 0;
    const std::uint64_t partner = flip(i, n, qubit);
    const Complex self = amps[i];
    const Complex other = amps[partner];
    out[i] = row == 0 ? g(0, 0) * self + g(0, 1) * other : g(1, 0) * other + g(1, 1) * self;
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void apply_controlled_phase(std::span<Complex> amps, std::size_t n, std::size_t control,
                            std::size_t target, Complex phase) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (test_bit(i, n, control) && test_bit(i, n, target)) amps[i] *= phase;
  }
}

void apply_controlled_swap(std::span<Complex> amps, std::size_t n, std::size_t control,
                           std::size_t a, std::size_t b) {
  std::vector<Complex> out(amps.begin(), amps.end());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (!test_bit(i, n, control)) continue;
    std::uint64_t j = i;
    if (test_bit(i, n, a) != test_bit(i, n, b)) j = flip(flip(i, n, a), n, b);
    out[j] = amps[i];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void swap_qubits(std::span<Complex> amps, std::size_t n, std::size_t a, std::size_t b) {
  std::vector<Complex> out(amps.begin(), amps.end());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    std::uint64_t j = i;
    if (test_bit(i, n, a) != test_bit(i, n, b)) j = flip(flip(i, n, a), n, b);
    out[j] = amps[i];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void apply_on_span(std::span<Complex> amps, std::size_t n, QubitSpan span, const Matrix& u,
                   std::optional<std::size_t> control) {
  std::vector<Complex> out(amps.size());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (control && !test_bit(i, n, *control)) {
      out[i] = amps[i];
      continue;
    }
    const std::uint64_t row = span_value(i, n, span);
    Complex acc{0.0, 0.0};
    for (std::uint64_t col = 0; col < span.dim(); ++col) {
      acc += u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) *
             amps[with_span_value(i, n, span, col)];
    }
    out[i] = acc;
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

std::vector<double> span_marginals(std::span<const Complex> amps, std::size_t n, QubitSpan span) {
  std::vector<double> probs(span.dim(), 0.0);
  for (std::uint64_t i = 0; i < amps.size(); ++i) probs[span_value(i, n, span)] += std::norm(amps[i]);
  return probs;
}

}  // namespace qsnn::qcore::reference
