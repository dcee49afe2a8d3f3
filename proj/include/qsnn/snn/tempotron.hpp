#pragma once

#include <vector>

#include "qsnn/snn/neuron.hpp"

namespace qsnn::snn {

enum class Label { no_fire = 0, fire = 1 };

/// Tempotron correction for one sample. On a missed firing the weights move
/// toward the kernel contributions at the potential's peak (report.t_max);
/// on a spurious firing they move away from the contributions at the first
/// output spike. A correct decision leaves them untouched.
std::vector<double> tempotron_update(const SpikeConfig& config, const NeuronParams& params,
                                     Label label, const CrossingReport& report, double lr);

}  // namespace qsnn::snn
