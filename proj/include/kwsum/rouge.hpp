#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kwsum {

using TokenList = std::vector<std::string>;

// Lowercased tokens with punctuation-only tokens removed. No stemming and no
// stopword removal.
TokenList rouge_tokens(std::string_view text);

// Clipped n-gram recall against each reference, averaged over references that
// contain at least one n-gram. Throws Error(kNoReferenceContent) when none do.
double rouge_n(const TokenList& candidate, const std::vector<TokenList>& references, std::size_t n);

struct SkipBigramUnits {
  bool unigrams = true;
  bool skip_bigrams = true;
  std::size_t max_skip = 4;  // intervening tokens allowed between a pair
};

// Recall over unigrams plus ordered pairs with at most four tokens between
// them.
double rouge_su4(const TokenList& candidate, const std::vector<TokenList>& references,
                 const SkipBigramUnits& units = {});

struct RougeScores {
  double r1 = 0.0;
  double r2 = 0.0;
  double rsu4 = 0.0;
  double r_avg = 0.0;
};

// `truncate_words` keeps only the first N candidate tokens.
RougeScores rouge_scores(TokenList candidate, const std::vector<TokenList>& references,
                         std::optional<std::size_t> truncate_words = std::nullopt);

}  // namespace kwsum
