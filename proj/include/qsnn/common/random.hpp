#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace qsnn {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic child stream `index` of a parent seed. Streams with
/// different indices are statistically independent for our purposes, and
/// the mapping does not depend on thread count or execution order.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

/// Draws a fresh seed from `rng`, for handing off to split streams.
std::uint64_t draw_seed(Rng& rng);

/// Uniform double in [0, 1).
double uniform01(Rng& rng);

/// Samples an index from a discrete distribution by inverse CDF.
/// Entries need not sum exactly to one; the residual mass goes to the last
/// index with nonzero probability.
std::size_t sample_index(std::span<const double> probabilities, Rng& rng);

}  // namespace qsnn
