#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qsnn/mnist/idx.hpp"
#include "qsnn/snn/neuron.hpp"

namespace qsnn::mnist {

inline constexpr std::size_t kSynapses = 25;
inline constexpr std::size_t kPooledSide = 14;
inline constexpr std::size_t kPaddedSide = 15;
inline constexpr std::size_t kBlockSide = 3;
inline constexpr std::uint8_t kBinarizeThreshold = 127;
inline constexpr double kMaxMoment = 511.0;

using Grid15 = std::array<std::array<std::uint8_t, kPaddedSide>, kPaddedSide>;

struct EncodedSample {
  std::array<std::optional<double>, kSynapses> moments{};  ///< empty: no stimulus
  std::uint8_t label = 0;

  [[nodiscard]] std::size_t spike_count() const noexcept;
  /// Spike configuration for a neuron with the given weights.
  [[nodiscard]] snn::SpikeConfig to_config(const std::vector<double>& weights) const;
};

/// Binarized at > 127 and 2x2 max-pooled, then zero-padded bottom and right to 15x15.
Grid15 preprocess(const RawImage& img);

/// Top-left corner (row, col) of block i, row-major over the 5x5 block grid.
std::pair<std::size_t, std::size_t> block_origin(std::size_t block);

/// t_i = sum_k 2^k alpha_{i,k} per 3x3 block with k row-major inside the
/// block; all-zero blocks emit nothing.
EncodedSample encode_image(const RawImage& img);

std::vector<EncodedSample> encode_all(const std::vector<RawImage>& images);

/// Keeps digits 0 and 1 only, in input order.
std::vector<RawImage> binary_filter(const std::vector<RawImage>& images);

}  // namespace qsnn::mnist
