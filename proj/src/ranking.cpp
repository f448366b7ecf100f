#include "kwsum/ranking.hpp"

#include <algorithm>
#include <cmath>

namespace kwsum {

const char* ToString(RankMode mode) {
  return mode == RankMode::kDirect ? "direct" : "softplus";
}

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double rank_keyword_scores(std::span<const double> keyword_scores, RankMode mode) {
  double total = 0.0;
  for (double r : keyword_scores) total += mode == RankMode::kSoftplus ? softplus(r) : r;
  return total;
}

RankedSentence rank_sentence(const Sentence& sentence, const KeywordScores& scores, RankMode mode) {
  RankedSentence out;
  out.sentence_index = sentence.index;

  std::vector<std::string> words;
  words.reserve(sentence.content_tokens.size());
  for (const auto& t : sentence.content_tokens) words.push_back(t.normalized);

  auto record = [&](const std::string& key, double r) {
    auto it = std::find_if(out.matched_keywords.begin(), out.matched_keywords.end(),
                           [&](const KeywordMatch& m) { return m.keyword == key; });
    if (it == out.matched_keywords.end()) {
      out.matched_keywords.push_back({key, r, 1});
    } else {
      ++it->occurrences;
    }
  };

  const std::size_t longest = std::max<std::size_t>(1, scores.max_phrase_words());
  std::size_t pos = 0;
  while (pos < words.size()) {
    std::size_t matched = 0;
    for (std::size_t len = std::min(longest, words.size() - pos); len >= 2; --len) {
      const std::string key = join_words(words, pos, pos + len);
      if (auto r = scores.get(key)) {
        record(key, *r);
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      if (auto r = scores.get(words[pos])) record(words[pos], *r);
      matched = 1;
    }
    pos += matched;
  }

  for (const auto& m : out.matched_keywords) {
    const double per = mode == RankMode::kSoftplus ? softplus(m.score) : m.score;
    out.score += per * static_cast<double>(m.occurrences);
  }
  return out;
}

std::vector<RankedSentence> rank_all(const Document& doc, const KeywordScores& scores,
                                     RankMode mode) {
  std::vector<RankedSentence> ranked;
  ranked.reserve(doc.sentences().size());
  for (const auto& s : doc.sentences()) ranked.push_back(rank_sentence(s, scores, mode));
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedSentence& a, const RankedSentence& b) {
    return a.score > b.score;
  });
  return ranked;
}

}  // namespace kwsum
