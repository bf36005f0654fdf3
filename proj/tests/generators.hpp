#pragma once

// Seeded random inputs for property tests.

#include <algorithm>
#include <vector>

#include "inv/sequence.hpp"
#include "inv/structure.hpp"

namespace gen {

inline int uniform(inv::Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Drops random stacks into [1, n] and keeps those that leave the structure
// valid under the default policy, so crossings arise whenever they fit.
inline inv::Structure valid_structure(inv::Rng& rng, int n, int attempts = 40) {
  std::vector<inv::Arc> arcs;
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  const int wanted = uniform(rng, 0, 4);
  int placed = 0;
  for (int t = 0; t < attempts && placed < wanted; ++t) {
    if (n < 10) break;
    const int size = uniform(rng, 3, 5);
    const int i = uniform(rng, 1, n);
    const int j_min = i + 2 * size - 2 + 4;
    if (j_min > n) continue;
    const int j = uniform(rng, j_min, n);
    bool free = true;
    for (int s = 0; s < size; ++s) free = free && !used[i + s] && !used[j - s];
    if (!free) continue;
    auto trial = arcs;
    for (int s = 0; s < size; ++s) trial.push_back({i + s, j - s});
    inv::Structure candidate(n, trial);
    if (!inv::validate_target(candidate).empty()) continue;
    arcs = std::move(trial);
    for (int s = 0; s < size; ++s) used[i + s] = used[j - s] = 1;
    ++placed;
  }
  return inv::Structure(n, arcs);
}

inline inv::RnaSequence sequence(inv::Rng& rng, int n) {
  std::vector<inv::Base> bases;
  for (int w = 0; w < n; ++w) bases.push_back(inv::kBases[uniform(rng, 0, 3)]);
  return inv::RnaSequence(std::move(bases));
}

}  // namespace gen
