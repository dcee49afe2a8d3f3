#include "qsnn/swaptest/swaptest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsnn/qcore/gates.hpp"

namespace qsnn::swaptest {

namespace {

using qcore::StateVector;

StateVector swap_test_circuit(StateVector s, const Layout& layout, const qcore::Unitary& uw,
                              const qcore::Unitary& ut) {
  s = qcore::apply_unitary_on_span(std::move(s), layout.first(), uw);
  s = qcore::apply_unitary_on_span(std::move(s), layout.second(), ut);
  s = qcore::apply_hadamard_all(std::move(s), Layout::ancilla());
  for (std::size_t i = 0; i < layout.register_qubits; ++i) {
    s = qcore::apply_controlled_swap(std::move(s), 0, layout.first().start + i,
                                     layout.second().start + i);
  }
  return qcore::apply_hadamard_all(std::move(s), Layout::ancilla());
}

void check_compatible(const encode::EncodedState& w, const encode::EncodedState& t) {
  if (w.n_qubits() != t.n_qubits()) {
    throw InvalidArgument("swap test registers differ: " + std::to_string(w.n_qubits()) +
                          " vs " + std::to_string(t.n_qubits()) + " qubits");
  }
}

constexpr std::uint64_t kShotBlock = 4096;

}  // namespace

StateVector build_swap_test_state(const encode::EncodedState& w, const encode::EncodedState& t) {
  check_compatible(w, t);
  const Layout layout{w.n_qubits()};
  return swap_test_circuit(StateVector(layout.total_qubits()), layout,
                           encode::build_preparation_unitary(w),
                           encode::build_preparation_unitary(t));
}

qcore::Unitary swap_test_unitary(const encode::EncodedState& w, const encode::EncodedState& t) {
  check_compatible(w, t);
  const Layout layout{w.n_qubits()};
  const auto uw = encode::build_preparation_unitary(w);
  const auto ut = encode::build_preparation_unitary(t);
  const std::size_t n = layout.total_qubits();
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  qcore::Matrix m(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const StateVector out =
        swap_test_circuit(qcore::init_basis(n, static_cast<std::uint64_t>(col)), layout, uw, ut);
    for (Eigen::Index row = 0; row < dim; ++row) m(row, col) = out[static_cast<std::uint64_t>(row)];
  }
  return qcore::Unitary(std::move(m));
}

SwapTestOutcome ancilla_probabilities(const StateVector& state) {
  const auto p = qcore::span_probabilities(state, Layout::ancilla());
  return {p[0], p[1], std::clamp(2.0 * p[0] - 1.0, 0.0, 1.0)};
}

RepetitionEstimate sample_repetitions(double p1, std::uint64_t n_a, Rng& rng) {
  if (n_a == 0) throw InvalidArgument("estimate_by_repetition: n_a must be >= 1");
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw InvalidArgument("ancilla probability outside [0, 1]");
  const std::uint64_t base = draw_seed(rng);
  const auto blocks = static_cast<std::int64_t>((n_a + kShotBlock - 1) / kShotBlock);
  const double probs[2] = {1.0 - p1, p1};
  std::uint64_t ones = 0;
#pragma omp parallel for schedule(static) reduction(+ : ones) if (blocks > 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    Rng stream = make_stream(base, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kShotBlock;
    const std::uint64_t end = std::min(n_a, begin + kShotBlock);
    for (std::uint64_t s = begin; s < end; ++s) ones += sample_index(probs, stream);
  }
  return {n_a, ones, static_cast<double>(ones) / static_cast<double>(n_a), 0};
}

RepetitionEstimate estimate_by_repetition(const encode::EncodedState& w,
                                          const encode::EncodedState& t, std::uint64_t n_a,
                                          Rng& rng) {
  const auto outcome = ancilla_probabilities(build_swap_test_state(w, t));
  return sample_repetitions(outcome.p1, n_a, rng);
}

std::uint64_t required_repetitions(int gamma, double constant) {
  if (gamma < 1) throw InvalidArgument("required_repetitions: gamma must be >= 1");
  if (!(constant > 0.0)) throw InvalidArgument("required_repetitions: constant must be positive");
  return static_cast<std::uint64_t>(std::ceil(constant * std::ldexp(1.0, 2 * gamma)));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

double interval_argument(double p1, std::uint64_t n_a, double delta) {
  if (!(p1 > 0.0 && p1 < 1.0)) throw InvalidArgument("confidence_interval: p1 must be in (0, 1)");
  if (n_a < 30) throw InvalidArgument("confidence_interval: normal approximation needs n_a >= 30");
  if (!(delta >= 0.0)) throw InvalidArgument("confidence_interval: delta must be >= 0");
  return delta * std::sqrt(static_cast<double>(n_a)) * std::sqrt(p1 / (1.0 - p1));
}

}  // namespace

double confidence_interval(double p1, std::uint64_t n_a, double delta) {
  return 2.0 * normal_cdf(interval_argument(p1, n_a, delta)) - 1.0;
}

double confidence_interval_as_printed(double p1, std::uint64_t n_a, double delta) {
  return 2.0 * normal_cdf(interval_argument(p1, n_a, delta));
}

std::uint64_t empirical_required_shots(double p1, int gamma, double confidence,
                                       std::uint64_t trials, std::uint64_t seed) {
  if (gamma < 1) throw InvalidArgument("empirical_required_shots: gamma must be >= 1");
  if (trials == 0) throw InvalidArgument("empirical_required_shots: trials must be >= 1");
  const double tol = std::ldexp(1.0, -gamma);

  auto covered = [&](std::uint64_t n) {
    Rng rng = make_stream(seed, n);
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < trials; ++k) {
      const auto est = sample_repetitions(p1, n, rng);
      if (std::abs(est.p1_hat - p1) <= tol) ++hits;
    }
    return static_cast<double>(hits) >= confidence * static_cast<double>(trials);
  };

  std::uint64_t hi = 1;
  while (!covered(hi)) {
    if (hi > (std::uint64_t{1} << 40)) throw Error("empirical_required_shots: search diverged");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // lo fails (or is zero), hi passes
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (covered(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace qsnn::swaptest
