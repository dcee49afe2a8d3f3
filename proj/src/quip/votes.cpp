#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsnn/quip/quip.hpp"

namespace qsnn::quip {

std::uint64_t fold_readout(std::uint64_t r, int m) {
  const std::uint64_t n = std::uint64_t{1} << m;
  if (r >= n) throw InvalidArgument("readout out of range");
  return r <= n / 2 ? r : n - r;
}

QuipResult aggregate_votes(const Votes& votes, int m, bool slack) {
  if (votes.empty()) throw InvalidArgument("aggregate_votes: empty histogram");
  const std::uint64_t top = (std::uint64_t{1} << m) / 2;

  std::map<std::uint64_t, std::uint64_t> folded;
  for (const auto& [r, count] : votes) folded[fold_readout(r, m)] += count;

  auto count_at = [&](std::uint64_t c) {
    auto it = folded.find(c);
    return it == folded.end() ? std::uint64_t{0} : it->second;
  };
  auto score = [&](std::uint64_t c) {
    if (!slack) return count_at(c);
    std::uint64_t s = count_at(c);
    if (c > 0) s += count_at(c - 1);
    if (c < top) s += count_at(c + 1);
    return s;
  };

  // Window with the most votes wins; ties prefer a heavier center, then the
  // smaller one. The representative is the window's modal readout.
  std::vector<std::uint64_t> candidates;
  for (const auto& [c, count] : folded) {
    if (slack && c > 0) candidates.push_back(c - 1);
    candidates.push_back(c);
    if (slack && c < top) candidates.push_back(c + 1);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::uint64_t center = candidates.front();
  std::uint64_t best_score = 0;
  std::uint64_t best_own = 0;
  for (std::uint64_t c : candidates) {
    const std::uint64_t s = score(c);
    const std::uint64_t own = count_at(c);
    if (s > best_score || (s == best_score && own > best_own)) {
      center = c;
      best_score = s;
      best_own = own;
    }
  }
  std::uint64_t best = center;
  if (slack) {
    const std::uint64_t lo = center > 0 ? center - 1 : 0;
    const std::uint64_t hi = std::min(center + 1, top);
    for (std::uint64_t c = lo; c <= hi; ++c) {
      if (count_at(c) > count_at(best) || (count_at(c) == count_at(best) && c < best)) best = c;
    }
  }

  const Decoded d = decode_measurement(best, m);
  QuipResult out;
  out.r_measured = best;
  out.theta_hat = std::numbers::pi * static_cast<double>(d.decoded_r) / std::ldexp(1.0, m);
  out.inner_product = d.inner_product;
  out.band = d.band;
  out.votes = votes;
  out.support = best_score;
  return out;
}

}  // namespace qsnn::quip
