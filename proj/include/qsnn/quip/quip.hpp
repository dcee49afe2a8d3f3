#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsnn/common/error.hpp"
#include "qsnn/common/random.hpp"
#include "qsnn/encode/encode.hpp"
#include "qsnn/qcore/state_vector.hpp"
#include "qsnn/quip/analytic.hpp"

namespace qsnn::quip {

/// The exact normalized product of the two inputs is negative, so the
/// unsigned estimate cannot represent it.
class UnsignedConstraintError : public Error {
 public:
  explicit UnsignedConstraintError(double ip);
  [[nodiscard]] double inner_product() const noexcept { return ip_; }

 private:
  double ip_;
};

/// Round-off allowance before a slightly negative product counts as signed.
inline constexpr double kUnsignedTolerance = 1e-12;

/// Register sizes beyond this are rejected in circuit mode; the full Grover
/// matrix is 2^(1 + 2n) square.
inline constexpr std::size_t kCircuitMaxRegisterQubits = 3;

enum class Mode { circuit, analytic };

const char* to_string(Mode mode) noexcept;
Mode parse_mode(const std::string& text);

struct QuipConfig {
  int m = 10;
  int q = 1;
  bool slack = true;
  Mode mode = Mode::analytic;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless m >= 2 and q is odd and positive.
  void validate() const;
};

/// Histogram of raw control-register readouts.
using Votes = std::map<std::uint64_t, std::uint64_t>;

struct QuipResult {
  std::uint64_t r_measured = 0;  ///< winning readout, folded into [0, 2^(m-1)]
  double theta_hat = 0.0;
  double inner_product = 0.0;
  Band band = Band::low;
  Votes votes;
  std::uint64_t support = 0;  ///< votes counted toward the winner

  // Ground truth, filled by run_quip.
  double exact_inner_product = 0.0;
  double theta = 0.0;
  [[nodiscard]] double error() const noexcept;
};

/// <w|t> of the normalized register states.
double normalized_inner_product(const encode::EncodedState& w, const encode::EncodedState& t);

/// The two eigen-branches read out r and 2^m - r; both carry the same
/// product, so readouts are compared after mapping r -> min(r, 2^m - r).
std::uint64_t fold_readout(std::uint64_t r, int m);

/// Picks the winner of one or more readouts. Without slack it is the most
/// frequent folded readout. With slack, the +-1 window holding the most
/// votes is found first (ties: more votes at the center, then the smaller
/// center) and its most frequent readout wins. Remaining ties go to the
/// smaller index. `support` counts the votes inside the winning window.
/// Throws on an empty histogram.
QuipResult aggregate_votes(const Votes& votes, int m, bool slack);

/// State of the full circuit just before readout: U_s on the target, H on
/// the control register, controlled U_G^(2^j), IQFT on the control register.
/// Control qubits come first, most significant first.
qcore::StateVector circuit_final_state(const encode::EncodedState& w,
                                       const encode::EncodedState& t, int m);

/// Readout distribution of circuit_final_state over the control register.
std::vector<double> circuit_outcome_distribution(const encode::EncodedState& w,
                                                 const encode::EncodedState& t, int m);

/// Runs q repetitions and aggregates them. Throws UnsignedConstraintError for
/// a negative exact product and InvalidArgument for an invalid config.
QuipResult run_quip(const encode::EncodedState& w, const encode::EncodedState& t,
                    const QuipConfig& cfg, Rng& rng);
QuipResult run_quip(const encode::RealVector& w, const encode::RealVector& t,
                    const QuipConfig& cfg, Rng& rng);
/// Uses a generator seeded from cfg.seed.
QuipResult run_quip(const encode::RealVector& w, const encode::RealVector& t,
                    const QuipConfig& cfg);

}  // namespace qsnn::quip
