#pragma once

#include <cstdint>
#include <string>

#include "qsnn/common/random.hpp"
#include "qsnn/encode/encode.hpp"
#include "qsnn/quip/quip.hpp"

namespace qsnn::snn {

/// Unsigned product w.t together with how it was obtained.
struct ProductEstimate {
  double normalized;   ///< estimate of <w|t> for the normalized vectors
  double log_product;  ///< ln(normalized * |w| * |t|)
  double exact_normalized;
};

/// Source of the two unsigned products the closed-form peak moment needs.
/// Implementations throw quip::UnsignedConstraintError when the exact
/// product is not positive.
class InnerProductProvider {
 public:
  virtual ~InnerProductProvider() = default;
  [[nodiscard]] virtual ProductEstimate estimate(const encode::RealVector& w,
                                                 const encode::RealVector& t, Rng& rng) const = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

/// Classical sum_j w_j t_j.
class ExactProvider final : public InnerProductProvider {
 public:
  [[nodiscard]] ProductEstimate estimate(const encode::RealVector& w, const encode::RealVector& t,
                                         Rng& rng) const override;
  [[nodiscard]] std::string name() const override { return "exact"; }
};

/// Amplitude-estimation readout of <w|t>, rescaled by both norms.
class QuipProvider final : public InnerProductProvider {
 public:
  explicit QuipProvider(quip::QuipConfig cfg);
  [[nodiscard]] ProductEstimate estimate(const encode::RealVector& w, const encode::RealVector& t,
                                         Rng& rng) const override;
  [[nodiscard]] std::string name() const override { return "quip"; }
  [[nodiscard]] const quip::QuipConfig& config() const noexcept { return cfg_; }

 private:
  quip::QuipConfig cfg_;
};

}  // namespace qsnn::snn
