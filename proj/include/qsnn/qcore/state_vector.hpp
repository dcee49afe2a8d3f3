#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qsnn/common/error.hpp"

/// Dense state-vector simulator.
///
/// Qubit ordering: qubit 0 is the most significant bit of the basis index.
/// For an n-qubit state, qubit q lives at bit position (n - 1 - q). A
/// QubitSpan [start, start + length) therefore reads as a contiguous bit
/// field whose first qubit is its own most significant bit.
namespace qsnn::qcore {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 22;
inline constexpr double kNormTolerance = 1e-10;

class NormDriftError : public Error {
 public:
  using Error::Error;
};

/// Contiguous run of qubits inside a composite register.
struct QubitSpan {
  std::size_t start = 0;
  std::size_t length = 0;

  [[nodiscard]] std::size_t end() const noexcept { return start + length; }
  [[nodiscard]] std::uint64_t dim() const noexcept { return std::uint64_t{1} << length; }
  [[nodiscard]] bool contains(std::size_t qubit) const noexcept {
    return qubit >= start && qubit < end();
  }
  [[nodiscard]] bool overlaps(const QubitSpan& other) const noexcept {
    return start < other.end() && other.start < end();
  }
  /// Throws InvalidArgument unless 1 <= length and end() <= n_qubits.
  void validate(std::size_t n_qubits) const;

  friend bool operator==(const QubitSpan&, const QubitSpan&) = default;
};

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits);
  /// Takes ownership of the amplitudes; length must be 2^n and the norm one.
  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

  [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] std::uint64_t dim() const noexcept { return amps_.size(); }

  [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
  /// Mutable access for kernels. Callers restore the unit norm before the
  /// state leaves their hands; check_normalized() enforces it.
  [[nodiscard]] std::span<Complex> mutable_amplitudes() noexcept { return amps_; }

  [[nodiscard]] const Complex& operator[](std::uint64_t i) const { return amps_[i]; }

  [[nodiscard]] double norm_squared() const noexcept;
  /// Throws NormDriftError naming `context` if | ||psi||^2 - 1 | > 1e-10.
  void check_normalized(const char* context) const;

  /// Bit position of a qubit inside the basis index.
  [[nodiscard]] std::size_t bit_of(std::size_t qubit) const noexcept {
    return n_qubits_ - 1 - qubit;
  }

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

struct MeasurementSample {
  std::uint64_t outcome;
  StateVector post_state;
};

/// Inner product <a|b>.
Complex inner_product(const StateVector& a, const StateVector& b);

}  // namespace qsnn::qcore
