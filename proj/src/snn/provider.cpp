#include "qsnn/snn/provider.hpp"

#include <cmath>

namespace qsnn::snn {

namespace {

double log_norm(const encode::RealVector& v) { return std::log(v.euclidean_norm()); }

}  // namespace

ProductEstimate ExactProvider::estimate(const encode::RealVector& w, const encode::RealVector& t,
                                        Rng& /*rng*/) const {
  const double product = encode::dot(w, t);
  if (!(product > 0.0)) throw quip::UnsignedConstraintError(product);
  const double scale = w.euclidean_norm() * t.euclidean_norm();
  const double normalized = product / scale;
  return {normalized, std::log(product), normalized};
}

QuipProvider::QuipProvider(quip::QuipConfig cfg) : cfg_(cfg) { cfg_.validate(); }

ProductEstimate QuipProvider::estimate(const encode::RealVector& w, const encode::RealVector& t,
                                       Rng& rng) const {
  if (w.is_zero()) throw quip::UnsignedConstraintError(0.0);
  const auto ew = encode::normalize(w);
  const auto et = encode::normalize(t);
  const double exact = quip::normalized_inner_product(ew, et);
  if (!(exact > 0.0)) throw quip::UnsignedConstraintError(exact);
  const quip::QuipResult r = quip::run_quip(ew, et, cfg_, rng);
  return {r.inner_product, std::log(r.inner_product) + log_norm(w) + log_norm(t), exact};
}

}  // namespace qsnn::snn
