#include "qsnn/qcore/state_vector.hpp"

#include <cmath>
#include <string>

namespace qsnn::qcore {

void QubitSpan::validate(std::size_t n_qubits) const {
  if (length == 0 || end() > n_qubits) {
    throw InvalidArgument("qubit span [" + std::to_string(start) + ", " +
                          std::to_string(end()) + ") invalid for " +
                          std::to_string(n_qubits) + " qubits");
  }
}

namespace {

void check_qubit_count(std::size_t n) {
  if (n == 0 || n > kMaxQubits) {
    throw InvalidArgument("qubit count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw InvalidArgument("amplitude count " + std::to_string(amps_.size()) +
                          " does not match 2^" + std::to_string(n_qubits));
  }
  check_normalized("StateVector");
}

double StateVector::norm_squared() const noexcept {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

void StateVector::check_normalized(const char* context) const {
  const double drift = std::abs(norm_squared() - 1.0);
  if (!(drift <= kNormTolerance)) {
    throw NormDriftError(std::string(context) + ": norm drift " + std::to_string(drift));
  }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("inner_product: dimension mismatch");
  Complex acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace qsnn::qcore
