#include "qsnn/qcore/unitary.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsnn::qcore {

namespace {

std::size_t log2_exact(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw InvalidArgument("matrix dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  std::size_t k = 0;
  while ((Eigen::Index{1} << k) < dim) ++k;
  return k;
}

}  // namespace

double unitarity_defect(const Matrix& m) {
  const Matrix d = m * m.adjoint() - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

Unitary::Unitary(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidArgument("unitary must be square");
  n_qubits_ = log2_exact(m_.rows());
  const double defect = unitarity_defect(m_);
  if (!(defect <= kUnitaryTolerance)) {
    throw NotUnitaryError("matrix is not unitary: defect " + std::to_string(defect));
  }
}

Unitary Unitary::identity(std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  return Unitary(Matrix::Identity(dim, dim), n_qubits, Trusted{});
}

Unitary Unitary::iqft(std::size_t n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Matrix m(dim, dim);
  for (Eigen::Index h = 0; h < dim; ++h) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      // reduce h*k mod dim first so the phase argument stays small
      const auto hk = static_cast<double>((h * k) % dim);
      const double phase = -2.0 * std::numbers::pi * hk / static_cast<double>(dim);
      m(h, k) = std::polar(scale, phase);
    }
  }
  return Unitary(std::move(m));
}

Unitary Unitary::hadamard() {
  const double s = std::numbers::sqrt2 / 2.0;
  Matrix m(2, 2);
  m << s, s, s, -s;
  return Unitary(std::move(m), 1, Trusted{});
}

Unitary Unitary::pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return Unitary(std::move(m), 1, Trusted{});
}

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint(), n_qubits_, Trusted{}); }

Unitary Unitary::pow2(std::size_t k) const {
  Matrix acc = m_;
  for (std::size_t i = 0; i < k; ++i) acc = (acc * acc).eval();
  return Unitary(std::move(acc));
}

Unitary operator*(const Unitary& a, const Unitary& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("unitary product: dimension mismatch");
  return Unitary(a.m_ * b.m_);
}

}  // namespace qsnn::qcore
