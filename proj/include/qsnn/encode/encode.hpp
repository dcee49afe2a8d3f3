#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qsnn/common/error.hpp"
#include "qsnn/qcore/state_vector.hpp"
#include "qsnn/qcore/unitary.hpp"

/// Exact amplitude encoding of real vectors into register states.
namespace qsnn::encode {

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

/// e^{t / tau} would not fit in a double.
class FeatureOverflowError : public Error {
 public:
  using Error::Error;
};

/// Real data vector with logical dimension J = values.size() >= 1.
class RealVector {
 public:
  explicit RealVector(std::vector<double> values);
  RealVector(std::initializer_list<double> values) : RealVector(std::vector<double>(values)) {}

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t logical_dim() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

  [[nodiscard]] double euclidean_norm() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;

 private:
  std::vector<double> values_;
};

double dot(const RealVector& a, const RealVector& b);

/// Register qubits needed for J entries: ceil(log2 J), at least one.
std::size_t register_qubits(std::size_t logical_dim);

/// Normalized register state plus the factor divided out of the data.
///
/// `log_norm` is authoritative; `norm` is exp(log_norm) and may be +inf for
/// exponential feature vectors whose norm exceeds the double range.
struct EncodedState {
  qcore::StateVector state;
  double norm;
  double log_norm;
  std::size_t logical_dim;

  [[nodiscard]] std::size_t n_qubits() const noexcept { return state.n_qubits(); }
  /// Real part of amplitude i.
  [[nodiscard]] double amplitude(std::size_t i) const { return state[i].real(); }
};

/// Zero-pads to the next power of two and divides by the Euclidean norm.
EncodedState normalize(const RealVector& v);

/// Unit vector with entries proportional to e^{x_j / tau}, computed as
/// e^{(x_j - x_max) / tau} with the shift folded into log_norm so that no
/// intermediate overflows.
EncodedState normalize_exponential(std::span<const double> moments, double tau);

/// Real orthogonal matrix whose first column is the encoded amplitudes
/// (Householder reflection); U|0...0> reproduces the state.
qcore::Unitary build_preparation_unitary(const EncodedState& e);

/// (t_tau_s, t_tau) with entries e^{t_j / tau_s} and e^{t_j / tau}.
/// Throws InvalidArgument unless tau > tau_s > 0 and all moments are >= 0,
/// FeatureOverflowError if e^{t_j / tau_s} is not a finite double.
std::pair<RealVector, RealVector> time_feature_vectors(std::span<const double> spike_moments,
                                                       double tau, double tau_s);

/// Largest exponent x with e^x finite.
double max_finite_exponent();

}  // namespace qsnn::encode
