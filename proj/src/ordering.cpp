#include "kwsum/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kwsum/error.hpp"

namespace kwsum {

Ordering scores_to_ordering(std::span<const double> scores, ScoreDirection direction) {
  if (scores.empty()) throw Error(ErrorCode::kInvalidArgument, "no scores to order");
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::kInvalidArgument, "scores must be finite");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return direction == ScoreDirection::kHigherBetter ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  Ordering out;
  out.ranks.resize(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r) out.ranks[order[r]] = r + 1;
  return out;
}

std::size_t max_permutation_distance(std::size_t k) {
  std::size_t d = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t mirrored = k - i + 1;
    d += mirrored > i ? mirrored - i : i - mirrored;
  }
  return d;
}

double normalized_l1(const Ordering& a, const Ordering& b) {
  if (a.k() != b.k()) {
    throw Error(ErrorCode::kLengthMismatch, "orderings have different lengths");
  }
  if (a.k() < 2) throw Error(ErrorCode::kInvalidArgument, "orderings need at least two items");
  std::size_t sum = 0;
  for (std::size_t i = 0; i < a.k(); ++i) {
    sum += a.ranks[i] > b.ranks[i] ? a.ranks[i] - b.ranks[i] : b.ranks[i] - a.ranks[i];
  }
  return static_cast<double>(sum) / static_cast<double>(max_permutation_distance(a.k()));
}

}  // namespace kwsum
