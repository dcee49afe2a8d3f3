#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsnn/common/random.hpp"
#include "qsnn/qcore/state_vector.hpp"
#include "qsnn/qcore/unitary.hpp"

/// Value-level circuit operations. Each takes its state by value and
/// returns the transformed state, so `s = op(std::move(s), ...)` runs in
/// place. Arguments are validated and the unit norm is re-checked before
/// returning.
namespace qsnn::qcore {

/// Spans up to this size use the explicit IQFT matrix, larger ones the
/// Hadamard / controlled-phase decomposition.
inline constexpr std::size_t kIqftMatrixMaxQubits = 6;

StateVector init_basis(std::size_t n_qubits, std::uint64_t basis_index);

StateVector apply_hadamard_all(StateVector state, QubitSpan span);

StateVector apply_controlled_swap(StateVector state, std::size_t control, std::size_t a,
                                  std::size_t b);

StateVector apply_unitary_on_span(StateVector state, QubitSpan span, const Unitary& u);

/// Applies `u` on `span` only where the `control` qubit is one.
StateVector apply_controlled_unitary_on_span(StateVector state, std::size_t control,
                                             QubitSpan span, const Unitary& u);

StateVector apply_iqft(StateVector state, QubitSpan span);
StateVector apply_iqft_matrix(StateVector state, QubitSpan span);
StateVector apply_iqft_gates(StateVector state, QubitSpan span);

std::vector<double> span_probabilities(const StateVector& state, QubitSpan span);

MeasurementSample measure_span(const StateVector& state, QubitSpan span, Rng& rng);

}  // namespace qsnn::qcore
