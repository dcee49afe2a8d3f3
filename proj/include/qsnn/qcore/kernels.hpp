#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qsnn/qcore/state_vector.hpp"
#include "qsnn/qcore/unitary.hpp"

/// In-place amplitude kernels. `kernels` is the OpenMP-parallel production
/// path; `reference` is a deliberately naive serial twin with identical
/// signatures, kept for differential testing and benchmarking.
///
/// Arguments are not validated here; the value-level API in gates.hpp does
/// that once before dispatching.
namespace qsnn::qcore {

using Gate2 = Eigen::Matrix2cd;

namespace kernels {

/// States below this many amplitudes run serially; thread start-up costs
/// more than the loop.
inline constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 12;

void apply_single(std::span<Complex> amps, std::size_t n, std::size_t qubit, const Gate2& g);
void apply_controlled_phase(std::span<Complex> amps, std::size_t n, std::size_t control,
                            std::size_t target, Complex phase);
void apply_controlled_swap(std::span<Complex> amps, std::size_t n, std::size_t control,
                           std::size_t a, std::size_t b);
void swap_qubits(std::span<Complex> amps, std::size_t n, std::size_t a, std::size_t b);
/// (I (x) u (x) I) on `span`; restricted to the control-bit-one subspace
/// when `control` is set (control must lie outside the span).
void apply_on_span(std::span<Complex> amps, std::size_t n, QubitSpan span, const Matrix& u,
                   std::optional<std::size_t> control = std::nullopt);
/// Marginal probabilities of the span's basis states. Summation order is
/// fixed independent of thread count, so results are bit-reproducible.
std::vector<double> span_marginals(std::span<const Complex> amps, std::size_t n, QubitSpan span);

}  // namespace kernels

namespace reference {

void apply_single(std::span<Complex> amps, std::size_t n, std::size_t qubit, const Gate2& g);
void apply_controlled_phase(std::span<Complex> amps, std::size_t n, std::size_t control,
                            std::size_t target, Complex phase);
void apply_controlled_swap(std::span<Complex> amps, std::size_t n, std::size_t control,
                           std::size_t a, std::size_t b);
void swap_qubits(std::span<Complex> amps, std::size_t n, std::size_t a, std::size_t b);
void apply_on_span(std::span<Complex> amps, std::size_t n, QubitSpan span, const Matrix& u,
                   std::optional<std::size_t> control = std::nullopt);
std::vector<double> span_marginals(std::span<const Complex> amps, std::size_t n, QubitSpan span);

}  // namespace reference

}  // namespace qsnn::qcore
