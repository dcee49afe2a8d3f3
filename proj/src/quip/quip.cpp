#include "qsnn/quip/quip.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsnn/qcore/gates.hpp"
#include "qsnn/quip/grover.hpp"
#include "qsnn/swaptest/swaptest.hpp"

namespace qsnn::quip {

UnsignedConstraintError::UnsignedConstraintError(double ip)
    : Error("inner product " + std::to_string(ip) + " is negative; unsigned estimate impossible"),
      ip_(ip) {}

const char* to_string(Mode mode) noexcept {
  return mode == Mode::circuit ? "circuit" : "analytic";
}

Mode parse_mode(const std::string& text) {
  if (text == "circuit") return Mode::circuit;
  if (text == "analytic") return Mode::analytic;
  throw InvalidArgument("unknown mode '" + text + "' (expected circuit or analytic)");
}

void QuipConfig::validate() const {
  if (m < 2 || m > 20) throw InvalidArgument("m must be in [2, 20], got " + std::to_string(m));
  if (q < 1 || q % 2 == 0) throw InvalidArgument("q must be odd and >= 1, got " + std::to_string(q));
}

double QuipResult::error() const noexcept { return std::abs(inner_product - exact_inner_product); }

double normalized_inner_product(const encode::EncodedState& w, const encode::EncodedState& t) {
  if (w.n_qubits() != t.n_qubits()) throw InvalidArgument("register size mismatch");
  return qcore::inner_product(w.state, t.state).real();
}

qcore::StateVector circuit_final_state(const encode::EncodedState& w,
                                       const encode::EncodedState& t, int m) {
  if (m < 2) throw InvalidArgument("m must be >= 2");
  if (w.n_qubits() > kCircuitMaxRegisterQubits) {
    throw InvalidArgument("circuit mode supports registers of at most " +
                          std::to_string(kCircuitMaxRegisterQubits) + " qubits");
  }
  const GroverOperator g = build_grover_operator(w, t);
  const auto mu = static_cast<std::size_t>(m);
  const qcore::QubitSpan control{0, mu};
  const qcore::QubitSpan target{mu, static_cast<std::size_t>(g.swap_test.n_qubits())};

  qcore::StateVector s(control.length + target.length);
  s = qcore::apply_unitary_on_span(std::move(s), target, g.swap_test);
  s = qcore::apply_hadamard_all(std::move(s), control);
  qcore::Unitary power = g.as_circuit;  // U_G^(2^k) for the k-th least significant control
  for (std::size_t j = mu; j-- > 0;) {
    s = qcore::apply_controlled_unitary_on_span(std::move(s), j, target, power);
    if (j > 0) power = power * power;
  }
  return qcore::apply_iqft(std::move(s), control);
}

std::vector<double> circuit_outcome_distribution(const encode::EncodedState& w,
                                                 const encode::EncodedState& t, int m) {
  return qcore::span_probabilities(circuit_final_state(w, t, m),
                                   {0, static_cast<std::size_t>(m)});
}

namespace {

Votes sample_circuit(const encode::EncodedState& w, const encode::EncodedState& t,
                     const QuipConfig& cfg, Rng& rng) {
  // Every repetition is an independent run of the same circuit, so the
  // pre-measurement state is prepared once and measured q times.
  const qcore::StateVector final_state = circuit_final_state(w, t, cfg.m);
  Votes votes;
  for (int k = 0; k < cfg.q; ++k) {
    const auto sample =
        qcore::measure_span(final_state, {0, static_cast<std::size_t>(cfg.m)}, rng);
    ++votes[sample.outcome];
  }
  return votes;
}

Votes sample_analytic(double theta, const QuipConfig& cfg, Rng& rng) {
  const auto probs = outcome_distribution(theta, cfg.m);
  Votes votes;
  for (int k = 0; k < cfg.q; ++k) ++votes[sample_index(probs, rng)];
  return votes;
}

}  // namespace

QuipResult run_quip(const encode::EncodedState& w, const encode::EncodedState& t,
                    const QuipConfig& cfg, Rng& rng) {
  cfg.validate();
  const double ip = normalized_inner_product(w, t);
  if (ip < -kUnsignedTolerance) throw UnsignedConstraintError(ip);
  const double exact = std::clamp(ip, 0.0, 1.0);
  const double theta = theta_from_inner_product(exact);

  const Votes votes =
      cfg.mode == Mode::circuit ? sample_circuit(w, t, cfg, rng) : sample_analytic(theta, cfg, rng);
  QuipResult result = aggregate_votes(votes, cfg.m, cfg.slack);
  result.exact_inner_product = exact;
  result.theta = theta;
  return result;
}

QuipResult run_quip(const encode::RealVector& w, const encode::RealVector& t,
                    const QuipConfig& cfg, Rng& rng) {
  if (w.logical_dim() != t.logical_dim()) throw InvalidArgument("vector dimension mismatch");
  return run_quip(encode::normalize(w), encode::normalize(t), cfg, rng);
}

QuipResult run_quip(const encode::RealVector& w, const encode::RealVector& t,
                    const QuipConfig& cfg) {
  Rng rng(cfg.seed);
  return run_quip(w, t, cfg, rng);
}

}  // namespace qsnn::quip
