#pragma once

#include <Eigen/Dense>

#include "qsnn/encode/encode.hpp"
#include "qsnn/qcore/state_vector.hpp"
#include "qsnn/qcore/unitary.hpp"

namespace qsnn::quip {

/// Amplitude-estimation iterate built around the swap test,
/// U_G = -U_s I_0 U_s^-1 O, where O flips the sign of the ancilla-|1>
/// component and I_0 flips the sign of the all-zeros target state.
///
/// On span{|psi0>, |psi1>} (the normalized ancilla-0 and ancilla-1 parts of
/// U_s|0>) U_G is a rotation by 2 theta. `as_rotation` is that rotation
/// written in the basis {|psi0>, -|psi1>}:
///   [[cos 2theta, sin 2theta], [-sin 2theta, cos 2theta]].
struct GroverOperator {
  double theta;
  Eigen::Matrix2d as_rotation;
  qcore::Unitary as_circuit;
  qcore::Unitary swap_test;  ///< U_s, kept for building the initial state
};

/// [[cos 2theta, sin 2theta], [-sin 2theta, cos 2theta]].
Eigen::Matrix2d grover_rotation(double theta);

/// Throws quip::UnsignedConstraintError when <w|t> < 0 and InvalidArgument on
/// register mismatch.
GroverOperator build_grover_operator(const encode::EncodedState& w,
                                     const encode::EncodedState& t);

/// 2x2 matrix <b_i| U_G |b_j> with b = {|psi0>, -|psi1>}. Requires both
/// ancilla branches of U_s|0> to be non-empty (0 < theta < pi/2).
Eigen::Matrix2cd restricted_action(const GroverOperator& g);

}  // namespace qsnn::quip
