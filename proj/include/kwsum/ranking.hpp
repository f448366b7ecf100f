#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kwsum/keywords.hpp"
#include "kwsum/textprep.hpp"

namespace kwsum {

enum class RankMode { kDirect, kSoftplus };

const char* ToString(RankMode mode);

// ln(1 + e^x) without overflow for large x.
double softplus(double x);

struct KeywordMatch {
  std::string keyword;
  double score = 0.0;
  std::size_t occurrences = 0;
};

struct RankedSentence {
  std::size_t sentence_index = 0;
  double score = 0.0;
  std::vector<KeywordMatch> matched_keywords;  // first-occurrence order
};

// Sum of r over keyword scores (kDirect) or of softplus(r) (kSoftplus).
double rank_keyword_scores(std::span<const double> keyword_scores, RankMode mode);

// Keyword occurrences are found in the sentence's content tokens, scanning left
// to right and taking the longest phrase key that matches at each position.
// Every occurrence contributes.
RankedSentence rank_sentence(const Sentence& sentence, const KeywordScores& scores, RankMode mode);

// One entry per sentence, by descending score; equal scores keep document
// order.
std::vector<RankedSentence> rank_all(const Document& doc, const KeywordScores& scores,
                                     RankMode mode);

}  // namespace kwsum
