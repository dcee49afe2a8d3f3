#include "qsnn/quip/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsnn/common/error.hpp"
#include "qsnn/encode/encode.hpp"

namespace qsnn::quip {

namespace {

constexpr double kPi = std::numbers::pi;

void check_m(int m) {
  if (m < 2 || m > 30) throw InvalidArgument("control qubits m=" + std::to_string(m) + " outside [2, 30]");
}

double outcomes(int m) { return std::ldexp(1.0, m); }

// sqrt(cos(pi r / 2^(m-1))) written as a sine about the quarter point,
// so r = 2^(m-2) gives exactly zero.
double ip_at(double r, int m) {
  const double c = std::sin(kPi * (std::ldexp(1.0, m - 2) - r) / std::ldexp(1.0, m - 1));
  return std::sqrt(std::max(0.0, c));
}

std::uint64_t to_low_band(std::uint64_t r_tilde, int m) {
  const auto d = decode_measurement(r_tilde, m);
  if (d.band == Band::invalid_middle) {
    throw InvalidArgument("readout " + std::to_string(r_tilde) + " lies in the middle band");
  }
  const auto n = std::uint64_t{1} << m;
  return d.band == Band::low ? r_tilde : n - r_tilde;
}

}  // namespace

const char* to_string(Band b) noexcept {
  switch (b) {
    case Band::low: return "low";
    case Band::high: return "high";
    case Band::invalid_middle: return "invalid-middle";
  }
  return "?";
}

double theta_from_inner_product(double ip) {
  if (!(ip >= 0.0 && ip <= 1.0)) {
    throw InvalidArgument("inner product " + std::to_string(ip) + " outside [0, 1]");
  }
  return 0.5 * std::acos(ip * ip);
}

double inner_product_from_theta(double theta) {
  return std::sqrt(std::max(0.0, std::sin(kPi / 2 - 2.0 * theta)));
}

Decoded decode_measurement(std::uint64_t r, int m) {
  check_m(m);
  const std::uint64_t n = std::uint64_t{1} << m;
  if (r >= n) throw InvalidArgument("readout " + std::to_string(r) + " >= 2^m");
  const std::uint64_t quarter = n / 4;
  if (r <= quarter) return {ip_at(static_cast<double>(r), m), Band::low, r};
  if (r >= 3 * quarter) return {ip_at(static_cast<double>(n - r), m), Band::high, r};
  // both band edges decode to zero
  const std::uint64_t edge = r < n / 2 ? quarter : 3 * quarter;
  return {0.0, Band::invalid_middle, edge};
}

double fejer(double x, int m) {
  const double n = outcomes(m);
  // N is even, so shifting x by a multiple of N leaves sin(pi x) unchanged.
  double xr = std::fmod(x, n);
  if (xr > n / 2) xr -= n;
  if (xr < -n / 2) xr += n;
  if (std::abs(xr) < 1e-12) return 1.0;
  const double num = std::sin(kPi * xr);
  const double den = n * std::sin(kPi * xr / n);
  return (num * num) / (den * den);
}

std::vector<double> outcome_distribution(double theta, int m) {
  check_m(m);
  if (!(theta >= 0.0 && theta <= kPi / 4 + 1e-15)) {
    throw InvalidArgument("theta outside [0, pi/4]");
  }
  const auto n = std::uint64_t{1} << m;
  const double r = outcomes(m) * theta / kPi;
  std::vector<double> p(n);
  for (std::uint64_t h = 0; h < n; ++h) {
    const auto hd = static_cast<double>(h);
    p[h] = 0.5 * fejer(hd - r, m) + 0.5 * fejer(hd + r, m);
  }
  return p;
}

double success_probability(double delta_r, int m) {
  check_m(m);
  const double limit = std::ldexp(1.0, -(m + 1));
  if (!(std::abs(delta_r) <= limit * (1.0 + 1e-12))) {
    throw InvalidArgument("|delta_r| exceeds 2^-(m+1)");
  }
  return fejer(outcomes(m) * delta_r, m);
}

double slack_probability(double delta_r, int m) {
  const double centre = success_probability(delta_r, m);
  const double x = outcomes(m) * delta_r;
  return centre + fejer(x + 1.0, m) + fejer(x - 1.0, m);
}

double majority_vote_probability(double p, int q) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("majority vote: p outside [0, 1]");
  if (q < 1 || q % 2 == 0) throw InvalidArgument("majority vote: q must be odd and >= 1");
  double total = 0.0;
  for (int k = q / 2 + 1; k <= q; ++k) {
    const double log_c = std::lgamma(q + 1.0) - std::lgamma(k + 1.0) - std::lgamma(q - k + 1.0);
    total += std::exp(log_c) * std::pow(p, k) * std::pow(1.0 - p, q - k);
  }
  return std::min(total, 1.0);
}

double error_bound(std::uint64_t r_tilde, int m, double half_width) {
  check_m(m);
  if (!(half_width >= 0.0)) throw InvalidArgument("error_bound: negative window");
  const auto r = static_cast<double>(to_low_band(r_tilde, m));
  const double here = ip_at(r, m);
  return std::max(std::abs(ip_at(r + half_width, m) - here),
                  std::abs(ip_at(r - half_width, m) - here));
}

double max_error(std::uint64_t r_tilde, int m) { return error_bound(r_tilde, m, 0.5); }

double max_error_as_printed(std::uint64_t r_tilde, int m) {
  check_m(m);
  const auto r = static_cast<double>(to_low_band(r_tilde, m));
  const double a = kPi * r / std::ldexp(1.0, m - 1);
  const double shifted = a + kPi / std::ldexp(1.0, 2 * (m - 1));
  return std::abs(std::sqrt(std::max(0.0, std::cos(shifted))) - std::sqrt(std::max(0.0, std::cos(a))));
}

Rounding round_phase_index(double theta, int m) {
  check_m(m);
  const double n = outcomes(m);
  const double r = n * theta / kPi;
  const double r_tilde = std::floor(r + 0.5);
  return {static_cast<std::uint64_t>(r_tilde), (r - r_tilde) / n};
}

GateCount gate_count(std::uint64_t J, int m) {
  check_m(m);
  if (J == 0) throw InvalidArgument("gate_count: J must be >= 1");
  GateCount g{};
  g.register_qubits = encode::register_qubits(J);
  g.target_qubits = 1 + 2 * g.register_qubits;
  g.controlled_swaps_per_us = g.register_qubits;
  g.ops_per_us = 2 + 2 + g.controlled_swaps_per_us;
  g.ops_per_grover = 1 + 2 * g.ops_per_us + 1;
  g.grover_applications = (std::uint64_t{1} << m) - 1;
  const auto mu = static_cast<std::uint64_t>(m);
  g.iqft_hadamards = mu;
  g.iqft_controlled_phases = mu * (mu - 1) / 2;
  g.iqft_swaps = mu / 2;
  g.total = g.ops_per_us + mu + g.grover_applications * g.ops_per_grover + g.iqft_hadamards +
            g.iqft_controlled_phases + g.iqft_swaps;
  return g;
}

}  // namespace qsnn::quip
