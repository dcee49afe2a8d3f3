#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsnn/mnist/encoding.hpp"
#include "qsnn/snn/neuron.hpp"
#include "qsnn/snn/provider.hpp"

namespace qsnn::mnist {

struct TrainConfig {
  std::size_t epochs = 20;
  double lr = 0.02;
  double lr_decay = 5.0;  ///< epoch e uses lr / (1 + lr_decay (e - 1))
  std::uint64_t seed = 0;
  std::uint8_t fire_label = 0;  ///< samples with this label should fire
  std::size_t calibration_samples = 50;
  double init_weight_max = 0.1;  ///< initial weights ~ U[0, init_weight_max)

  void validate() const;
};

struct Confusion {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  [[nodiscard]] std::size_t total() const noexcept { return tp + tn + fp + fn; }
  [[nodiscard]] double accuracy() const noexcept;
};

struct Evaluation {
  double accuracy = 0.0;
  Confusion confusion;
  std::vector<bool> fired;  ///< per sample, input order
  std::size_t fallbacks = 0;
};

struct EpochRecord {
  std::size_t epoch;  ///< 1-based
  double train_accuracy;
  double test_accuracy;
  std::size_t updates;  ///< weight corrections applied during the epoch
};

struct TrainResult {
  std::vector<double> weights;
  snn::NeuronParams params;  ///< with the calibrated threshold
  std::vector<EpochRecord> trace;
};

/// Median peak potential over the first `count` samples with the given
/// weights.
double calibrate_threshold(const std::vector<EncodedSample>& samples,
                           const std::vector<double>& weights, const snn::NeuronParams& params,
                           std::size_t count);

/// Fire/no-fire decisions for every sample. Sample i draws from stream
/// (seed, i), so the result does not depend on the thread count.
Evaluation evaluate(const std::vector<EncodedSample>& samples, const std::vector<double>& weights,
                    const snn::NeuronParams& params, const snn::InnerProductProvider& provider,
                    std::uint8_t fire_label = 1, std::uint64_t seed = 0);

/// Tempotron training of a single 25-synapse neuron. Visit order is
/// reshuffled every epoch from the seed. Throws InvalidArgument on an empty
/// training set.
TrainResult train_binary(const std::vector<EncodedSample>& train,
                         const std::vector<EncodedSample>& test, snn::NeuronParams params,
                         const snn::InnerProductProvider& provider, const TrainConfig& cfg);

/// One neuron per digit, each trained fire-on-own-digit. Prediction takes
/// the first neuron (in digit order) that fires, or -1.
struct Cascade {
  std::vector<std::uint8_t> digits;
  std::vector<TrainResult> neurons;

  [[nodiscard]] int predict(const EncodedSample& s, const snn::InnerProductProvider& provider,
                            Rng& rng) const;
};

Cascade train_one_vs_rest(const std::vector<EncodedSample>& train,
                          const std::vector<std::uint8_t>& digits, snn::NeuronParams params,
                          const snn::InnerProductProvider& provider, TrainConfig cfg);

}  // namespace qsnn::mnist
