#include "qsnn/encode/encode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qsnn::encode {

RealVector::RealVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("RealVector needs at least one entry");
  for (double x : values_) {
    if (!std::isfinite(x)) throw InvalidArgument("RealVector entries must be finite");
  }
}

double RealVector::euclidean_norm() const noexcept {
  // scaled accumulation guards against overflow for large entries
  double scale = 0.0;
  for (double x : values_) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : values_) acc += (x / scale) * (x / scale);
  return scale * std::sqrt(acc);
}

bool RealVector::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

double dot(const RealVector& a, const RealVector& b) {
  if (a.logical_dim() != b.logical_dim()) throw InvalidArgument("dot: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.logical_dim(); ++i) acc += a[i] * b[i];
  return acc;
}

std::size_t register_qubits(std::size_t logical_dim) {
  if (logical_dim == 0) throw InvalidArgument("logical dimension must be >= 1");
  std::size_t q = 0;
  while ((std::size_t{1} << q) < logical_dim) ++q;
  return std::max<std::size_t>(q, 1);
}

namespace {

EncodedState from_scaled(std::span<const double> scaled, double log_scale) {
  const std::size_t n = register_qubits(scaled.size());
  double acc = 0.0;
  for (double x : scaled) acc += x * x;
  const double len = std::sqrt(acc);
  std::vector<qcore::Complex> amps(std::size_t{1} << n, qcore::Complex{0.0, 0.0});
  for (std::size_t i = 0; i < scaled.size(); ++i) amps[i] = scaled[i] / len;
  const double log_norm = log_scale + std::log(len);
  return EncodedState{qcore::StateVector(n, std::move(amps)), std::exp(log_norm), log_norm,
                      scaled.size()};
}

}  // namespace

EncodedState normalize(const RealVector& v) {
  if (v.is_zero()) throw ZeroVectorError("cannot encode the all-zero vector");
  double scale = 0.0;
  for (double x : v.values()) scale = std::max(scale, std::abs(x));
  std::vector<double> scaled(v.values().begin(), v.values().end());
  for (double& x : scaled) x /= scale;
  EncodedState e = from_scaled(scaled, std::log(scale));
  // keep the exact Euclidean norm rather than exp(log(.)) round-off
  e.norm = v.euclidean_norm();
  return e;
}

EncodedState normalize_exponential(std::span<const double> moments, double tau) {
  if (moments.empty()) throw InvalidArgument("normalize_exponential: no moments");
  if (!(tau > 0.0)) throw InvalidArgument("normalize_exponential: tau must be positive");
  const double top = *std::max_element(moments.begin(), moments.end());
  std::vector<double> scaled(moments.size());
  for (std::size_t i = 0; i < moments.size(); ++i) scaled[i] = std::exp((moments[i] - top) / tau);
  return from_scaled(scaled, top / tau);
}

qcore::Unitary build_preparation_unitary(const EncodedState& e) {
  const auto dim = static_cast<Eigen::Index>(e.state.dim());
  Eigen::VectorXd a(dim);
  for (Eigen::Index i = 0; i < dim; ++i) a(i) = e.amplitude(static_cast<std::size_t>(i));

  // H = I - 2 v v^T / (v^T v) with v = e0 - a swaps e0 and a.
  Eigen::VectorXd v = -a;
  v(0) += 1.0;
  const double vv = v.squaredNorm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim);
  if (vv > 1e-300) h -= (2.0 / vv) * v * v.transpose();
  return qcore::Unitary(h.cast<qcore::Complex>());
}

double max_finite_exponent() { return std::log(std::numeric_limits<double>::max()); }

std::pair<RealVector, RealVector> time_feature_vectors(std::span<const double> spike_moments,
                                                       double tau, double tau_s) {
  if (!(tau_s > 0.0) || !(tau > tau_s)) {
    throw InvalidArgument("time_feature_vectors: need tau > tau_s > 0");
  }
  if (spike_moments.empty()) throw InvalidArgument("time_feature_vectors: no moments");
  std::vector<double> fast, slow;
  fast.reserve(spike_moments.size());
  slow.reserve(spike_moments.size());
  for (double t : spike_moments) {
    if (!(t >= 0.0)) throw InvalidArgument("time_feature_vectors: moments must be >= 0");
    const double x = t / tau_s;
    if (x > max_finite_exponent() || !std::isfinite(std::exp(x))) {
      throw FeatureOverflowError("e^(" + std::to_string(t) + " / " + std::to_string(tau_s) +
                                 ") overflows a double");
    }
    fast.push_back(std::exp(x));
    slow.push_back(std::exp(t / tau));
  }
  return {RealVector(std::move(fast)), RealVector(std::move(slow))};
}

}  // namespace qsnn::encode
