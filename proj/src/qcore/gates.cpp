#include "qsnn/qcore/gates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qsnn/qcore/kernels.hpp"

namespace qsnn::qcore {

namespace {

void check_qubit(const StateVector& s, std::size_t q) {
  if (q >= s.n_qubits()) {
    throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                          std::to_string(s.n_qubits()) + " qubits");
  }
}

Gate2 hadamard_gate() {
  const double h = std::numbers::sqrt2 / 2.0;
  Gate2 g;
  g << h, h, h, -h;
  return g;
}

}  // namespace

StateVector init_basis(std::size_t n_qubits, std::uint64_t basis_index) {
  StateVector s(n_qubits);
  if (basis_index >= s.dim()) {
    throw InvalidArgument("basis index " + std::to_string(basis_index) + " out of range for " +
                          std::to_string(n_qubits) + " qubits");
  }
  auto amps = s.mutable_amplitudes();
  amps[0] = 0.0;
  amps[basis_index] = 1.0;
  return s;
}

StateVector apply_hadamard_all(StateVector state, QubitSpan span) {
  span.validate(state.n_qubits());
  const Gate2 h = hadamard_gate();
  for (std::size_t q = span.start; q < span.end(); ++q) {
    kernels::apply_single(state.mutable_amplitudes(), state.n_qubits(), q, h);
  }
  state.check_normalized("apply_hadamard_all");
  return state;
}

StateVector apply_controlled_swap(StateVector state, std::size_t control, std::size_t a,
                                  std::size_t b) {
  check_qubit(state, control);
  check_qubit(state, a);
  check_qubit(state, b);
  if (control == a || control == b || a == b) {
    throw InvalidArgument("controlled swap needs three distinct qubits");
  }
  kernels::apply_controlled_swap(state.mutable_amplitudes(), state.n_qubits(), control, a, b);
  state.check_normalized("apply_controlled_swap");
  return state;
}

StateVector apply_unitary_on_span(StateVector state, QubitSpan span, const Unitary& u) {
  span.validate(state.n_qubits());
  if (u.n_qubits() != span.length) {
    throw InvalidArgument("unitary acts on " + std::to_string(u.n_qubits()) +
                          " qubits but span has " + std::to_string(span.length));
  }
  kernels::apply_on_span(state.mutable_amplitudes(), state.n_qubits(), span, u.matrix());
  state.check_normalized("apply_unitary_on_span");
  return state;
}

StateVector apply_controlled_unitary_on_span(StateVector state, std::size_t control,
                                             QubitSpan span, const Unitary& u) {
  span.validate(state.n_qubits());
  check_qubit(state, control);
  if (span.contains(control)) throw InvalidArgument("control qubit lies inside the target span");
  if (u.n_qubits() != span.length) {
    throw InvalidArgument("unitary acts on " + std::to_string(u.n_qubits()) +
                          " qubits but span has " + std::to_string(span.length));
  }
  kernels::apply_on_span(state.mutable_amplitudes(), state.n_qubits(), span, u.matrix(), control);
  state.check_normalized("apply_controlled_unitary_on_span");
  return state;
}

StateVector apply_iqft(StateVector state, QubitSpan span) {
  if (span.length <= kIqftMatrixMaxQubits) return apply_iqft_matrix(std::move(state), span);
  return apply_iqft_gates(std::move(state), span);
}

StateVector apply_iqft_matrix(StateVector state, QubitSpan span) {
  span.validate(state.n_qubits());
  return apply_unitary_on_span(std::move(state), span, Unitary::iqft(span.length));
}

StateVector apply_iqft_gates(StateVector state, QubitSpan span) {
  span.validate(state.n_qubits());
  const std::size_t n = state.n_qubits();
  const std::size_t m = span.length;
  auto amps = state.mutable_amplitudes();
  const Gate2 h = hadamard_gate();

  // Reverse of the textbook QFT circuit: undo the final bit reversal, then
  // walk the qubits from least to most significant with conjugated phases.
  for (std::size_t j = 0; j < m / 2; ++j) {
    kernels::swap_qubits(amps, n, span.start + j, span.start + m - 1 - j);
  }
  for (std::size_t jj = m; jj-- > 0;) {
    for (std::size_t k = m - jj; k >= 2; --k) {
      const double angle = -2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(k));
      kernels::apply_controlled_phase(amps, n, span.start + jj + k - 1, span.start + jj,
                                      std::polar(1.0, angle));
    }
    kernels::apply_single(amps, n, span.start + jj, h);
  }
  state.check_normalized("apply_iqft_gates");
  return state;
}

std::vector<double> span_probabilities(const StateVector& state, QubitSpan span) {
  span.validate(state.n_qubits());
  return kernels::span_marginals(state.amplitudes(), state.n_qubits(), span);
}

MeasurementSample measure_span(const StateVector& state, QubitSpan span, Rng& rng) {
  const std::vector<double> probs = span_probabilities(state, span);
  const std::uint64_t outcome = sample_index(probs, rng);

  const std::size_t low = state.n_qubits() - span.end();
  const double scale = 1.0 / std::sqrt(probs[outcome]);
  std::vector<Complex> post(state.amplitudes().begin(), state.amplitudes().end());
  for (std::uint64_t i = 0; i < post.size(); ++i) {
    if (((i >> low) & (span.dim() - 1)) == outcome) {
      post[i] *= scale;
    } else {
      post[i] = 0.0;
    }
  }
  return {outcome, StateVector(state.n_qubits(), std::move(post))};
}

}  // namespace qsnn::qcore
