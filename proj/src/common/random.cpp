#include "qsnn/common/random.hpp"

#include "qsnn/common/error.hpp"

namespace qsnn {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t draw_seed(Rng& rng) { return rng(); }

double uniform01(Rng& rng) {
  // 53 random mantissa bits; independent of the standard library's
  // distribution implementation so streams stay portable.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(std::span<const double> probabilities, Rng& rng) {
  if (probabilities.empty()) {
    throw InvalidArgument("sample_index: empty distribution");
  }
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_nonzero = i;
    acc += probabilities[i];
    if (u < acc) return i;
  }
  return last_nonzero;
}

}  // namespace qsnn
