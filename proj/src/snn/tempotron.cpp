#include "qsnn/snn/tempotron.hpp"

namespace qsnn::snn {

std::vector<double> tempotron_update(const SpikeConfig& config, const NeuronParams& params,
                                     Label label, const CrossingReport& report, double lr) {
  std::vector<double> w = config.weights;
  const bool want = label == Label::fire;
  if (want == report.fired) return w;

  const double at = want ? report.t_max : report.output_spikes.front();
  const double sign = want ? 1.0 : -1.0;
  for (const Spike& s : config.spikes) {
    if (s.moment < at) w[s.synapse] += sign * lr * kernel(at - s.moment, params);
  }
  return w;
}

}  // namespace qsnn::snn
