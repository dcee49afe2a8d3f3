#pragma once

#include <cstdint>
#include <vector>

/// Closed-form side of amplitude-estimation inner products. Everything here
/// follows from the exact outcome distribution; nothing samples.
///
/// Notation used throughout: N = 2^m outcomes; a phase theta in [0, pi/4]
/// sits at the real-valued index r = N theta / pi; the rounded readout is
/// r_tilde and the remainder Delta r = (r - r_tilde) / N lies in
/// [-2^-(m+1), 2^-(m+1)).
namespace qsnn::quip {

enum class Band { low, high, invalid_middle };

const char* to_string(Band b) noexcept;

/// theta = acos(ip^2) / 2 in [0, pi/4]. Throws InvalidArgument unless
/// ip is in [0, 1].
double theta_from_inner_product(double ip);

/// Inverse of theta_from_inner_product: sqrt(cos 2 theta).
double inner_product_from_theta(double theta);

struct Decoded {
  double inner_product;
  Band band;
  /// Index actually decoded; differs from the input only for middle-band
  /// readouts, which are clamped to the nearest valid band edge.
  std::uint64_t decoded_r;
};

/// Low band 0 <= r <= 2^(m-2): sqrt(cos(r pi / 2^(m-1))).
/// High band 3 * 2^(m-2) <= r < 2^m: sqrt(cos(2 pi - pi r / 2^(m-1))).
Decoded decode_measurement(std::uint64_t r, int m);

/// Probability of each readout h in [0, 2^m): the two eigen-branches at
/// r and N - r, each with weight 1/2, spread by the Fejer kernel.
std::vector<double> outcome_distribution(double theta, int m);

/// Fejer kernel |sum_k e^{-i 2 pi x k / N}|^2 / N^2 for an offset x in index
/// units; exactly 1 when x is a multiple of N.
double fejer(double x, int m);

/// sin^2(2^m pi dr) / (2^2m sin^2(pi dr)), 1 at dr = 0. Throws unless
/// |dr| <= 2^-(m+1).
double success_probability(double delta_r, int m);

/// p(r_tilde - 1) + p(r_tilde) + p(r_tilde + 1) using the exact kernel.
double slack_probability(double delta_r, int m);

/// P[Binomial(q, p) >= floor(q/2) + 1]. q must be odd.
double majority_vote_probability(double p, int q);

/// |ip(r_tilde +- 1/2) - ip(r_tilde)|, the larger side, where ip(r) =
/// sqrt(cos(pi r / 2^(m-1))) and the half index step is the extreme
/// rounding remainder. High-band readouts are mirrored first. Throws for
/// middle-band readouts.
double max_error(std::uint64_t r_tilde, int m);

/// Same as max_error but with a window of `half_width` index steps, e.g.
/// 1.5 for a readout accepted under the +-1 slack condition.
double error_bound(std::uint64_t r_tilde, int m, double half_width);

/// The bound with the angular offset pi / 2^(2(m-1)) exactly as it is
/// usually printed; agrees with max_error only at m = 2.
double max_error_as_printed(std::uint64_t r_tilde, int m);

/// Rounds r = N theta / pi half-up to r_tilde and returns Delta r.
struct Rounding {
  std::uint64_t r_tilde;
  double delta_r;
};
Rounding round_phase_index(double theta, int m);

struct GateCount {
  std::uint64_t register_qubits;         ///< ceil(log2 J), at least one
  std::uint64_t target_qubits;           ///< 1 + 2 * register_qubits
  std::uint64_t controlled_swaps_per_us; ///< controlled swaps inside one U_s
  std::uint64_t ops_per_us;              ///< 2 preparations + 2 H + controlled swaps
  std::uint64_t ops_per_grover;          ///< O + U_s^-1 + I_0 + U_s
  std::uint64_t grover_applications;     ///< 2^m - 1
  std::uint64_t iqft_hadamards;
  std::uint64_t iqft_controlled_phases;
  std::uint64_t iqft_swaps;
  std::uint64_t total;                   ///< every counted operation of one run
};

/// Raw operation counts of a single run for J-dimensional vectors.
GateCount gate_count(std::uint64_t J, int m);

}  // namespace qsnn::quip
