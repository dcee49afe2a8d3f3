#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qsnn/common/error.hpp"

namespace qsnn::mnist {

inline constexpr std::size_t kSide = 28;
inline constexpr std::size_t kPixels = kSide * kSide;
inline constexpr std::uint32_t kImageMagic = 2051;
inline constexpr std::uint32_t kLabelMagic = 2049;

struct RawImage {
  std::array<std::uint8_t, kPixels> pixels{};  ///< row-major
  std::uint8_t label = 0;

  [[nodiscard]] std::uint8_t at(std::size_t row, std::size_t col) const {
    return pixels[row * kSide + col];
  }
};

class IdxError : public Error {
 public:
  using Error::Error;
};

class BadMagicError : public IdxError {
 public:
  BadMagicError(const std::filesystem::path& path, std::uint32_t expected, std::uint32_t found);
};

class TruncatedError : public IdxError {
 public:
  TruncatedError(const std::filesystem::path& path, std::size_t offset, std::size_t wanted);
  /// First byte that could not be read.
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class CountMismatchError : public IdxError {
 public:
  CountMismatchError(std::size_t images, std::size_t labels);
};

struct IdxHeader {
  std::uint32_t magic = 0;
  std::uint32_t count = 0;
  std::uint32_t rows = 0;  ///< zero for label files
  std::uint32_t cols = 0;
};

/// Reads only the header of an image (2051) or label (2049) file.
IdxHeader read_idx_header(const std::filesystem::path& path);

/// Parses an image/label file pair. Images must be 28x28.
std::vector<RawImage> load_idx(const std::filesystem::path& images,
                               const std::filesystem::path& labels);

/// Writes an image/label pair in the same format.
void write_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
               const std::vector<RawImage>& data);

}  // namespace qsnn::mnist
