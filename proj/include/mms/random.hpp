#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace mms {

// mt19937_64 is fully specified by the standard; the helpers below avoid the
// implementation-defined std:: distributions so seeded runs are portable.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

// Uniform k-subset of [lo, hi] (Floyd's algorithm), returned sorted.
inline std::vector<int> sample_combination(Rng& rng, int lo, int hi, int k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  const int span = hi - lo + 1;
  for (int j = span - k; j < span; ++j) {
    const int t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(j) + 1));
    const int pick = lo + t;
    bool seen = false;
    for (int x : out) seen = seen || x == pick;
    out.push_back(seen ? lo + j : pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mms
