#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kwsum {

enum class ScoreDirection { kHigherBetter, kLowerBetter };

// ranks[i] is the 1-based rank of item i; always a permutation of 1..k.
struct Ordering {
  std::vector<std::size_t> ranks;

  std::size_t k() const { return ranks.size(); }
  friend bool operator==(const Ordering&, const Ordering&) = default;
};

// Rank 1 is the best score; equal scores rank by list position.
Ordering scores_to_ordering(std::span<const double> scores,
                            ScoreDirection direction = ScoreDirection::kHigherBetter);

// Largest L1 distance between two permutations of 1..k: sum |(k - i + 1) - i|.
std::size_t max_permutation_distance(std::size_t k);

// sum |a_i - b_i| / max_permutation_distance(k), in [0, 1]. Throws
// Error(kLengthMismatch) on different lengths and Error(kInvalidArgument) for
// k < 2.
double normalized_l1(const Ordering& a, const Ordering& b);

}  // namespace kwsum
