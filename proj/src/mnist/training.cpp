#include "qsnn/mnist/training.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qsnn/snn/tempotron.hpp"

namespace qsnn::mnist {

void TrainConfig::validate() const {
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (!(lr > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (!(lr_decay >= 0.0)) throw InvalidArgument("learning-rate decay must be >= 0");
  if (fire_label > 9) throw InvalidArgument("fire label must be a digit");
}

double Confusion::accuracy() const noexcept {
  const std::size_t n = total();
  return n == 0 ? 0.0 : static_cast<double>(tp + tn) / static_cast<double>(n);
}

double calibrate_threshold(const std::vector<EncodedSample>& samples,
                           const std::vector<double>& weights, const snn::NeuronParams& params,
                           std::size_t count) {
  count = std::min(count, samples.size());
  if (count == 0) throw InvalidArgument("calibration needs at least one sample");
  std::vector<double> peaks(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto cfg = samples[i].to_config(weights);
    peaks[i] = snn::grid_argmax(cfg, params, 0.0, params.T, 4096).second;
  }
  const auto mid = peaks.begin() + static_cast<std::ptrdiff_t>(count / 2);
  std::nth_element(peaks.begin(), mid, peaks.end());
  return *mid;
}

Evaluation evaluate(const std::vector<EncodedSample>& samples, const std::vector<double>& weights,
                    const snn::NeuronParams& params, const snn::InnerProductProvider& provider,
                    std::uint8_t fire_label, std::uint64_t seed) {
  Evaluation ev;
  ev.fired.assign(samples.size(), false);
  std::vector<std::size_t> fallbacks(samples.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    Rng rng = make_stream(seed, k);
    const auto report = snn::detect_crossings(samples[k].to_config(weights), params, provider, rng);
    fallbacks[k] = report.fallback_count;
#pragma omp critical(qsnn_eval_store)
    ev.fired[k] = report.fired;
  }
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const bool want = samples[k].label == fire_label;
    const bool got = ev.fired[k];
    if (want && got) ++ev.confusion.tp;
    else if (!want && !got) ++ev.confusion.tn;
    else if (got) ++ev.confusion.fp;
    else ++ev.confusion.fn;
    ev.fallbacks += fallbacks[k];
  }
  ev.accuracy = ev.confusion.accuracy();
  return ev;
}

TrainResult train_binary(const std::vector<EncodedSample>& train,
                         const std::vector<EncodedSample>& test, snn::NeuronParams params,
                         const snn::InnerProductProvider& provider, const TrainConfig& cfg) {
  cfg.validate();
  if (train.empty()) throw InvalidArgument("train_binary: empty training set");

  Rng init = make_stream(cfg.seed, 0);
  std::vector<double> w(kSynapses);
  for (double& x : w) x = cfg.init_weight_max * uniform01(init);
  params.v_thr = calibrate_threshold(train, w, params, cfg.calibration_samples);
  params.validate();

  TrainResult result;
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Rng shuffle = make_stream(cfg.seed, 2 * epoch);
    std::shuffle(order.begin(), order.end(), shuffle);
    Rng rng = make_stream(cfg.seed, 2 * epoch + 1);
    const double lr = cfg.lr / (1.0 + cfg.lr_decay * static_cast<double>(epoch - 1));
    std::size_t updates = 0;
    for (std::size_t idx : order) {
      const EncodedSample& s = train[idx];
      const auto config = s.to_config(w);
      const auto report = snn::detect_crossings(config, params, provider, rng);
      const auto label = s.label == cfg.fire_label ? snn::Label::fire : snn::Label::no_fire;
      if ((label == snn::Label::fire) != report.fired) {
        w = snn::tempotron_update(config, params, label, report, lr);
        ++updates;
      }
    }
    const double train_acc =
        evaluate(train, w, params, provider, cfg.fire_label, cfg.seed ^ epoch).accuracy;
    const double test_acc =
        test.empty() ? 0.0
                     : evaluate(test, w, params, provider, cfg.fire_label, ~cfg.seed ^ epoch).accuracy;
    result.trace.push_back({epoch, train_acc, test_acc, updates});
  }
  result.weights = std::move(w);
  result.params = params;
  return result;
}

int Cascade::predict(const EncodedSample& s, const snn::InnerProductProvider& provider,
                     Rng& rng) const {
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    const auto& n = neurons[i];
    if (snn::detect_crossings(s.to_config(n.weights), n.params, provider, rng).fired) {
      return digits[i];
    }
  }
  return -1;
}

Cascade train_one_vs_rest(const std::vector<EncodedSample>& train,
                          const std::vector<std::uint8_t>& digits, snn::NeuronParams params,
                          const snn::InnerProductProvider& provider, TrainConfig cfg) {
  Cascade c;
  c.digits = digits;
  const std::uint64_t base = cfg.seed;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    cfg.fire_label = digits[i];
    cfg.seed = mix64(base + i);
    c.neurons.push_back(train_binary(train, {}, params, provider, cfg));
  }
  return c;
}

}  // namespace qsnn::mnist
