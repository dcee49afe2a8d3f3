#include "qsnn/mnist/encoding.hpp"

#include <algorithm>

namespace qsnn::mnist {

std::size_t EncodedSample::spike_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(moments.begin(), moments.end(), [](const auto& m) { return m.has_value(); }));
}

snn::SpikeConfig EncodedSample::to_config(const std::vector<double>& weights) const {
  if (weights.size() != kSynapses) throw InvalidArgument("expected 25 weights");
  snn::SpikeConfig cfg;
  cfg.synapse_count = kSynapses;
  cfg.weights = weights;
  for (std::size_t i = 0; i < kSynapses; ++i) {
    if (moments[i]) cfg.spikes.push_back({i, *moments[i]});
  }
  return cfg;
}

Grid15 preprocess(const RawImage& img) {
  Grid15 g{};
  for (std::size_t r = 0; r < kPooledSide; ++r) {
    for (std::size_t c = 0; c < kPooledSide; ++c) {
      std::uint8_t v = 0;
      for (std::size_t dr = 0; dr < 2; ++dr)
        for (std::size_t dc = 0; dc < 2; ++dc)
          v = std::max<std::uint8_t>(v, img.at(2 * r + dr, 2 * c + dc) > kBinarizeThreshold);
      g[r][c] = v;
    }
  }
  return g;
}

std::pair<std::size_t, std::size_t> block_origin(std::size_t block) {
  if (block >= kSynapses) throw InvalidArgument("block index out of range");
  constexpr std::size_t per_row = kPaddedSide / kBlockSide;
  return {(block / per_row) * kBlockSide, (block % per_row) * kBlockSide};
}

EncodedSample encode_image(const RawImage& img) {
  const Grid15 g = preprocess(img);
  EncodedSample s;
  s.label = img.label;
  for (std::size_t i = 0; i < kSynapses; ++i) {
    const auto [r0, c0] = block_origin(i);
    unsigned t = 0;
    for (std::size_t k = 0; k < kBlockSide * kBlockSide; ++k) {
      if (g[r0 + k / kBlockSide][c0 + k % kBlockSide]) t |= 1u << k;
    }
    if (t != 0) s.moments[i] = static_cast<double>(t);
  }
  return s;
}

std::vector<EncodedSample> encode_all(const std::vector<RawImage>& images) {
  std::vector<EncodedSample> out(images.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(images.size()); ++i) {
    out[static_cast<std::size_t>(i)] = encode_image(images[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<RawImage> binary_filter(const std::vector<RawImage>& images) {
  std::vector<RawImage> out;
  std::copy_if(images.begin(), images.end(), std::back_inserter(out),
               [](const RawImage& img) { return img.label <= 1; });
  return out;
}

}  // namespace qsnn::mnist
