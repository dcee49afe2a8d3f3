#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "qsnn/common/error.hpp"

namespace qsnn::qcore {

using Matrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTolerance = 1e-8;

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

/// Square matrix of dimension 2^k, checked unitary (U U^dagger = I within
/// 1e-8 in max-norm) on construction.
class Unitary {
 public:
  explicit Unitary(Matrix m);

  static Unitary identity(std::size_t n_qubits);
  /// Entry (h, k) = 2^(-m/2) exp(-i 2 pi h k / 2^m).
  static Unitary iqft(std::size_t n_qubits);
  static Unitary hadamard();
  static Unitary pauli_z();

  [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
  [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }

  [[nodiscard]] Unitary adjoint() const;
  /// U^(2^k) by repeated squaring.
  [[nodiscard]] Unitary pow2(std::size_t k) const;

  friend Unitary operator*(const Unitary& a, const Unitary& b);

 private:
  struct Trusted {};
  Unitary(Matrix m, std::size_t n_qubits, Trusted) : m_(std::move(m)), n_qubits_(n_qubits) {}

  Matrix m_;
  std::size_t n_qubits_;
};

/// Max-norm distance of U U^dagger from the identity.
double unitarity_defect(const Matrix& m);

}  // namespace qsnn::qcore
