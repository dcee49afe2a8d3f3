#include "qsnn/quip/grover.hpp"

#include <cmath>

#include "qsnn/quip/quip.hpp"
#include "qsnn/swaptest/swaptest.hpp"

namespace qsnn::quip {

Eigen::Matrix2d grover_rotation(double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  Eigen::Matrix2d r;
  r << c, s, -s, c;
  return r;
}

GroverOperator build_grover_operator(const encode::EncodedState& w,
                                     const encode::EncodedState& t) {
  const double ip = normalized_inner_product(w, t);
  if (ip < -kUnsignedTolerance) throw UnsignedConstraintError(ip);
  const double theta = theta_from_inner_product(std::clamp(ip, 0.0, 1.0));

  qcore::Unitary us = swaptest::swap_test_unitary(w, t);
  const Eigen::Index dim = us.dim();
  const Eigen::Index half = dim / 2;  // ancilla is the most significant qubit

  Eigen::VectorXcd oracle = Eigen::VectorXcd::Ones(dim);
  oracle.tail(half).setConstant(-1.0);
  Eigen::VectorXcd zero_flip = Eigen::VectorXcd::Ones(dim);
  zero_flip(0) = -1.0;

  const qcore::Matrix& u = us.matrix();
  qcore::Matrix g = -(u * zero_flip.asDiagonal() * u.adjoint() * oracle.asDiagonal());
  return GroverOperator{theta, grover_rotation(theta), qcore::Unitary(std::move(g)), std::move(us)};
}

Eigen::Matrix2cd restricted_action(const GroverOperator& g) {
  const qcore::Matrix& us = g.swap_test.matrix();
  const Eigen::Index dim = us.rows();
  const Eigen::Index half = dim / 2;
  const Eigen::VectorXcd psi = us.col(0);

  Eigen::VectorXcd b0 = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd b1 = Eigen::VectorXcd::Zero(dim);
  b0.head(half) = psi.head(half);
  b1.tail(half) = psi.tail(half);
  const double n0 = b0.norm();
  const double n1 = b1.norm();
  if (n0 < 1e-9 || n1 < 1e-9) {
    throw InvalidArgument("restricted_action: one ancilla branch is empty");
  }
  b0 /= n0;
  b1 /= -n1;

  const qcore::Matrix& ug = g.as_circuit.matrix();
  Eigen::Matrix2cd r;
  r(0, 0) = b0.dot(ug * b0);  // Eigen's dot conjugates the left operand
  r(0, 1) = b0.dot(ug * b1);
  r(1, 0) = b1.dot(ug * b0);
  r(1, 1) = b1.dot(ug * b1);
  return r;
}

}  // namespace qsnn::quip
