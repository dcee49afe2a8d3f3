#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsnn/common/error.hpp"
#include "qsnn/common/random.hpp"

namespace qsnn::snn {

class InnerProductProvider;

/// Hyper-parameters of one spiking neuron. Defaults are configuration
/// choices, not fitted values.
struct NeuronParams {
  double tau = 15.0;
  double tau_s = 3.75;
  double v_thr = 1.0;
  double v_rest = 0.0;
  double T = 512.0;

  /// Throws InvalidArgument unless tau > tau_s > 0 and T > 0.
  void validate() const;
  /// tau_s tau / (tau - tau_s).
  [[nodiscard]] double v0() const noexcept { return tau_s * tau / (tau - tau_s); }
  /// Delay from a lone spike to its potential peak, v0 ln(tau / tau_s).
  [[nodiscard]] double peak_delay() const noexcept;
};

struct Spike {
  std::size_t synapse;
  double moment;
};

struct SpikeConfig {
  std::size_t synapse_count = 0;
  std::vector<Spike> spikes;
  std::vector<double> weights;  ///< one per synapse

  /// Throws InvalidArgument on out-of-range synapses or moments outside [0, T].
  void validate(const NeuronParams& params) const;
  /// Spikes ascending by moment (ties by synapse index).
  [[nodiscard]] std::vector<Spike> time_ordered() const;
};

/// A prefix's closed-form or fallback local maximum.
struct LocalMaximum {
  double moment;
  double potential;       ///< prefix potential (first J spikes) plus v_rest
  double full_potential;  ///< all spikes, for diagnostics
  std::size_t prefix;     ///< J
  bool in_window;         ///< t_J <= moment < t_{J+1} (or <= T for the last spike)
  bool fallback;          ///< found by grid search after a non-positive product
};

struct CrossingReport {
  std::vector<LocalMaximum> local_maxima;
  std::vector<double> output_spikes;  ///< ascending
  bool fired = false;
  std::size_t fallback_count = 0;
  /// Moment and value of the largest in-window maximum; falls back to the
  /// dense-grid maximum of the potential when no prefix produced one.
  double t_max = 0.0;
  double v_max = 0.0;
};

/// The closed-form path needs w.t > 0 for both feature vectors.
class NonPositiveProductError : public Error {
 public:
  NonPositiveProductError(std::size_t prefix, const std::string& detail);
  [[nodiscard]] std::size_t prefix() const noexcept { return prefix_; }

 private:
  std::size_t prefix_;
};

/// v0 (e^{-dt/tau} - e^{-dt/tau_s}) for dt >= 0, zero before the spike.
double kernel(double dt, const NeuronParams& params);

/// sum_k w_k sum_{t_i <= t} K(t - t_i) + v_rest.
double potential(double t, const SpikeConfig& config, const NeuronParams& params);

/// Potential of the first J time-ordered spikes, plus v_rest.
double prefix_potential(double t, std::size_t prefix, const SpikeConfig& config,
                        const NeuronParams& params);

/// Time derivative of the prefix-J potential,
/// v0 sum_j w_j [e^{-(t-t_j)/tau_s} / tau_s - e^{-(t-t_j)/tau} / tau].
/// Throws InvalidArgument if J exceeds the spike count or t precedes t_J.
double potential_derivative(double t, std::size_t prefix, const SpikeConfig& config,
                            const NeuronParams& params);

struct LocalMaxMoment {
  double moment;
  bool in_window;
};

/// Stationary point of the prefix-J potential,
/// t* = v0 [ln(tau/tau_s) + ln(w.t_tau_s) - ln(w.t_tau)],
/// with both products supplied by `provider`. Throws NonPositiveProductError
/// when either product is not positive.
LocalMaxMoment local_max_moment(std::size_t prefix, const SpikeConfig& config,
                                const NeuronParams& params, const InnerProductProvider& provider,
                                Rng& rng);

/// Scans every prefix J = 1..|D|, records its local maximum and emits an
/// output spike wherever an in-window maximum reaches v_thr.
CrossingReport detect_crossings(const SpikeConfig& config, const NeuronParams& params,
                                const InnerProductProvider& provider, Rng& rng);

/// Dense-grid argmax of the full potential over [lo, hi] with `points`
/// samples; first maximum wins.
std::pair<double, double> grid_argmax(const SpikeConfig& config, const NeuronParams& params,
                                      double lo, double hi, std::size_t points);

}  // namespace qsnn::snn
