#pragma once

// Independent reference computations. Nothing here calls into the library
// beyond plain data types, so agreement with the library is meaningful.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qsnn/common/random.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// Entry (h, k) = 2^{-m/2} exp(-2 pi i h k / 2^m).
inline std::vector<std::vector<cplx>> iqft_matrix(int m) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k)
      a[h][k] = std::polar(1.0 / std::sqrt(double(n)), -2.0 * pi * double(h * k) / double(n));
  return a;
}

inline std::vector<cplx> matvec(const std::vector<std::vector<cplx>>& a, const std::vector<cplx>& x) {
  std::vector<cplx> y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

// |sum_{k<N} e^{2 pi i k x / N}|^2 / N^2 by direct summation.
inline double geometric_prob(double x, std::size_t n) {
  cplx s = 0;
  for (std::size_t k = 0; k < n; ++k) s += std::polar(1.0, 2.0 * pi * double(k) * x / double(n));
  return std::norm(s) / double(n * n);
}

// |1 - e^{-i 2 pi dr N}|^2 / (N^2 |1 - e^{-i 2 pi dr}|^2).
inline double unsimplified_success(double dr, std::size_t n) {
  const cplx num = 1.0 - std::polar(1.0, -2.0 * pi * dr * double(n));
  const cplx den = 1.0 - std::polar(1.0, -2.0 * pi * dr);
  return std::norm(num) / (double(n * n) * std::norm(den));
}

inline double binomial_coefficient(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * double(n - k + i) / double(i);
  return c;
}

inline double majority_exact(double p, int q) {
  double s = 0;
  for (int k = q / 2 + 1; k <= q; ++k)
    s += binomial_coefficient(q, k) * std::pow(p, k) * std::pow(1.0 - p, q - k);
  return s;
}

// P[a < X <= b] for X ~ Binomial(n, p), summed term by term in log space.
inline double binomial_interval(std::uint64_t n, double p, double a, double b) {
  double s = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const double kd = double(k);
    if (kd <= a || kd > b) continue;
    const double lg = std::lgamma(double(n) + 1) - std::lgamma(kd + 1) - std::lgamma(double(n - k) + 1);
    s += std::exp(lg + kd * std::log(p) + double(n - k) * std::log1p(-p));
  }
  return s;
}

inline std::vector<double> random_vector(qsnn::Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * qsnn::uniform01(rng);
  return v;
}

inline std::vector<cplx> random_state(qsnn::Rng& rng, std::size_t dim) {
  std::vector<cplx> v(dim);
  double norm = 0;
  for (auto& x : v) {
    x = {2 * qsnn::uniform01(rng) - 1, 2 * qsnn::uniform01(rng) - 1};
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

}  // namespace oracle
