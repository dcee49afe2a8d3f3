#include "qsnn/snn/neuron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsnn/encode/encode.hpp"
#include "qsnn/snn/provider.hpp"

namespace qsnn::snn {

void NeuronParams::validate() const {
  if (!(tau_s > 0.0) || !(tau > tau_s)) throw InvalidArgument("neuron needs tau > tau_s > 0");
  if (!(T > 0.0)) throw InvalidArgument("observation period T must be positive");
}

double NeuronParams::peak_delay() const noexcept { return v0() * std::log(tau / tau_s); }

void SpikeConfig::validate(const NeuronParams& params) const {
  if (weights.size() != synapse_count) {
    throw InvalidArgument("expected " + std::to_string(synapse_count) + " weights, got " +
                          std::to_string(weights.size()));
  }
  for (const Spike& s : spikes) {
    if (s.synapse >= synapse_count) {
      throw InvalidArgument("spike on synapse " + std::to_string(s.synapse) + " >= N");
    }
    if (!(s.moment >= 0.0 && s.moment <= params.T)) {
      throw InvalidArgument("spike moment " + std::to_string(s.moment) + " outside [0, T]");
    }
  }
}

std::vector<Spike> SpikeConfig::time_ordered() const {
  std::vector<Spike> out = spikes;
  std::stable_sort(out.begin(), out.end(), [](const Spike& a, const Spike& b) {
    return a.moment < b.moment || (a.moment == b.moment && a.synapse < b.synapse);
  });
  return out;
}

NonPositiveProductError::NonPositiveProductError(std::size_t prefix, const std::string& detail)
    : Error("prefix " + std::to_string(prefix) + ": non-positive product (" + detail + ")"),
      prefix_(prefix) {}

double kernel(double dt, const NeuronParams& params) {
  if (dt < 0.0) return 0.0;
  return params.v0() * (std::exp(-dt / params.tau) - std::exp(-dt / params.tau_s));
}

namespace {

double sum_over(std::span<const Spike> spikes, const std::vector<double>& weights, double t,
                const NeuronParams& params) {
  double v = 0.0;
  for (const Spike& s : spikes) {
    if (s.moment <= t) v += weights[s.synapse] * kernel(t - s.moment, params);
  }
  return v;
}

std::vector<Spike> prefix_of(const SpikeConfig& config, std::size_t prefix) {
  std::vector<Spike> ordered = config.time_ordered();
  if (prefix == 0 || prefix > ordered.size()) {
    throw InvalidArgument("prefix " + std::to_string(prefix) + " outside [1, " +
                          std::to_string(ordered.size()) + "]");
  }
  ordered.resize(prefix);
  return ordered;
}

LocalMaxMoment closed_form(std::span<const Spike> ordered, std::size_t prefix,
                           const SpikeConfig& config, const NeuronParams& params,
                           const InnerProductProvider& provider, Rng& rng) {
  std::vector<double> w(prefix), moments(prefix);
  for (std::size_t j = 0; j < prefix; ++j) {
    w[j] = config.weights[ordered[j].synapse];
    moments[j] = ordered[j].moment;
  }
  const encode::RealVector wv(std::move(w));
  auto [fast, slow] = encode::time_feature_vectors(moments, params.tau, params.tau_s);

  ProductEstimate pf{}, ps{};
  try {
    pf = provider.estimate(wv, fast, rng);
    ps = provider.estimate(wv, slow, rng);
  } catch (const quip::UnsignedConstraintError& e) {
    throw NonPositiveProductError(prefix, e.what());
  } catch (const encode::ZeroVectorError& e) {
    throw NonPositiveProductError(prefix, e.what());
  }
  if (!(pf.normalized > 0.0) || !(ps.normalized > 0.0)) {
    throw NonPositiveProductError(prefix, "estimate decoded to zero");
  }

  const double t_star =
      params.v0() * (std::log(params.tau / params.tau_s) + pf.log_product - ps.log_product);
  const double lo = ordered[prefix - 1].moment;
  const bool last = prefix == ordered.size();
  const double hi = last ? params.T : ordered[prefix].moment;
  const bool in_window = t_star >= lo && (last ? t_star <= hi : t_star < hi);
  return {t_star, in_window};
}

}  // namespace

double potential(double t, const SpikeConfig& config, const NeuronParams& params) {
  return sum_over(config.spikes, config.weights, t, params) + params.v_rest;
}

double prefix_potential(double t, std::size_t prefix, const SpikeConfig& config,
                        const NeuronParams& params) {
  const auto ordered = prefix_of(config, prefix);
  return sum_over(ordered, config.weights, t, params) + params.v_rest;
}

double potential_derivative(double t, std::size_t prefix, const SpikeConfig& config,
                            const NeuronParams& params) {
  const auto ordered = prefix_of(config, prefix);
  if (t < ordered.back().moment) {
    throw InvalidArgument("potential_derivative: t precedes the prefix's last spike");
  }
  double acc = 0.0;
  for (const Spike& s : ordered) {
    const double dt = t - s.moment;
    acc += config.weights[s.synapse] *
           (std::exp(-dt / params.tau_s) / params.tau_s - std::exp(-dt / params.tau) / params.tau);
  }
  return params.v0() * acc;
}

LocalMaxMoment local_max_moment(std::size_t prefix, const SpikeConfig& config,
                                const NeuronParams& params, const InnerProductProvider& provider,
                                Rng& rng) {
  params.validate();
  const auto ordered = config.time_ordered();
  if (prefix == 0 || prefix > ordered.size()) {
    throw InvalidArgument("prefix " + std::to_string(prefix) + " outside [1, " +
                          std::to_string(ordered.size()) + "]");
  }
  return closed_form(ordered, prefix, config, params, provider, rng);
}

std::pair<double, double> grid_argmax(const SpikeConfig& config, const NeuronParams& params,
                                      double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi >= lo)) throw InvalidArgument("grid_argmax: bad grid");
  double best_t = lo;
  double best_v = -std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = lo + step * static_cast<double>(i);
    const double v = potential(t, config, params);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  return {best_t, best_v};
}

CrossingReport detect_crossings(const SpikeConfig& config, const NeuronParams& params,
                                const InnerProductProvider& provider, Rng& rng) {
  params.validate();
  config.validate(params);
  constexpr std::size_t kFallbackPoints = 512;

  CrossingReport report;
  const auto ordered = config.time_ordered();
  for (std::size_t j = 1; j <= ordered.size(); ++j) {
    const double lo = ordered[j - 1].moment;
    const double hi = j == ordered.size() ? params.T : ordered[j].moment;
    LocalMaximum lm{};
    lm.prefix = j;
    try {
      const LocalMaxMoment found = closed_form(ordered, j, config, params, provider, rng);
      lm.moment = found.moment;
      lm.in_window = found.in_window;
      lm.potential = sum_over(std::span(ordered).first(j), config.weights, found.moment, params) +
                     params.v_rest;
      lm.full_potential = potential(found.moment, config, params);
    } catch (const NonPositiveProductError&) {
      ++report.fallback_count;
      if (!(hi > lo)) continue;
      // interior maximum of the potential on this prefix's segment, if any
      const auto [t, v] = grid_argmax(config, params, lo, hi, kFallbackPoints);
      if (t <= lo || t >= hi) continue;
      lm.moment = t;
      lm.potential = v;
      lm.full_potential = v;
      lm.in_window = true;
      lm.fallback = true;
    }
    report.local_maxima.push_back(lm);
    if (lm.in_window && lm.potential >= params.v_thr) report.output_spikes.push_back(lm.moment);
  }
  report.fired = !report.output_spikes.empty();

  bool have_max = false;
  for (const auto& lm : report.local_maxima) {
    if (!lm.in_window) continue;
    if (!have_max || lm.potential > report.v_max) {
      report.t_max = lm.moment;
      report.v_max = lm.potential;
      have_max = true;
    }
  }
  if (!have_max) {
    const auto [t, v] = grid_argmax(config, params, 0.0, params.T, 4096);
    report.t_max = t;
    report.v_max = v;
  }
  return report;
}

}  // namespace qsnn::snn
