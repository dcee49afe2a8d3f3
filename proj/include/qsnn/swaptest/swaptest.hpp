#pragma once

#include <cstdint>

#include "qsnn/common/random.hpp"
#include "qsnn/encode/encode.hpp"
#include "qsnn/qcore/state_vector.hpp"
#include "qsnn/qcore/unitary.hpp"

/// Swap test between two encoded registers, and the cost of reading its
/// ancilla probability by plain repetition.
namespace qsnn::swaptest {

/// Register layout of the (1 + 2n)-qubit swap-test state: ancilla first,
/// then the |w> register, then the |t> register.
struct Layout {
  std::size_t register_qubits;

  [[nodiscard]] std::size_t total_qubits() const noexcept { return 1 + 2 * register_qubits; }
  [[nodiscard]] static constexpr qcore::QubitSpan ancilla() noexcept { return {0, 1}; }
  [[nodiscard]] qcore::QubitSpan first() const noexcept { return {1, register_qubits}; }
  [[nodiscard]] qcore::QubitSpan second() const noexcept {
    return {1 + register_qubits, register_qubits};
  }
};

struct SwapTestOutcome {
  double p0;
  double p1;
  double inner_product_sq;
};

struct RepetitionEstimate {
  std::uint64_t n_a;
  std::uint64_t ones;
  double p1_hat;
  int gamma;  ///< accuracy target in binary digits, 0 when not requested
};

/// H on ancilla, pairwise controlled swaps (qubit i of one register with
/// qubit i of the other), H on ancilla, applied to |0>|w>|t>.
qcore::StateVector build_swap_test_state(const encode::EncodedState& w,
                                         const encode::EncodedState& t);

/// The whole swap-test circuit including state preparation, as an explicit
/// matrix: U_s |0...0> = build_swap_test_state(w, t).
qcore::Unitary swap_test_unitary(const encode::EncodedState& w, const encode::EncodedState& t);

/// Exact ancilla marginals; inner_product_sq = clamp(2 p0 - 1, 0, 1).
SwapTestOutcome ancilla_probabilities(const qcore::StateVector& state);

/// Runs the swap test n_a times and counts ancilla ones. Shots run in
/// parallel blocks whose streams are split from one seed drawn from `rng`.
RepetitionEstimate estimate_by_repetition(const encode::EncodedState& w,
                                          const encode::EncodedState& t, std::uint64_t n_a,
                                          Rng& rng);

/// Same sampler starting from a known ancilla-one probability.
RepetitionEstimate sample_repetitions(double p1, std::uint64_t n_a, Rng& rng);

inline constexpr double kRepetitionConstant = 1.0;

/// ceil(constant * 4^gamma) shots for a gamma-binary-digit estimate.
std::uint64_t required_repetitions(int gamma, double constant = kRepetitionConstant);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Normal-approximation mass of the count landing in
/// ((1 - delta) n_a p1, (1 + delta) n_a p1]: 2 Phi(x) - 1 with
/// x = delta sqrt(n_a) sqrt(p1 / p0).
double confidence_interval(double p1, std::uint64_t n_a, double delta);

/// The uncorrected 2 Phi(x), which exceeds one for large x.
double confidence_interval_as_printed(double p1, std::uint64_t n_a, double delta);

/// Smallest shot count whose Monte Carlo coverage of |p1_hat - p1| <= 2^-gamma
/// reaches `confidence`, found by doubling then bisection. Coverage at each
/// n is estimated from `trials` independent repetition estimates drawn from a
/// stream keyed on (seed, n), so the search is deterministic.
std::uint64_t empirical_required_shots(double p1, int gamma, double confidence,
                                       std::uint64_t trials, std::uint64_t seed);

}  // namespace qsnn::swaptest
