#include "kwsum/rouge.hpp"

#include <algorithm>
#include <map>

#include "kwsum/error.hpp"
#include "kwsum/textprep.hpp"

namespace kwsum {

namespace {

using Unit = std::vector<std::string>;
using UnitCounts = std::map<Unit, std::size_t>;

UnitCounts NGrams(const TokenList& tokens, std::size_t n) {
  UnitCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Unit(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                  tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

UnitCounts SkipUnits(const TokenList& tokens, const SkipBigramUnits& units) {
  UnitCounts counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (units.unigrams) ++counts[Unit{tokens[i]}];
    if (!units.skip_bigrams) continue;
    const std::size_t last = std::min(tokens.size(), i + units.max_skip + 2);
    for (std::size_t j = i + 1; j < last; ++j) ++counts[Unit{tokens[i], tokens[j]}];
  }
  return counts;
}

// (matched, total) for one reference.
std::pair<std::size_t, std::size_t> Overlap(const UnitCounts& cand, const UnitCounts& ref) {
  std::size_t matched = 0;
  std::size_t total = 0;
  for (const auto& [unit, c] : ref) {
    total += c;
    auto it = cand.find(unit);
    if (it != cand.end()) matched += std::min(c, it->second);
  }
  return {matched, total};
}

template <typename Counter>
double MeanRecall(const TokenList& candidate, const std::vector<TokenList>& references,
                  Counter count_units) {
  if (references.empty()) throw Error(ErrorCode::kNoReferenceContent, "no references given");
  const UnitCounts cand = count_units(candidate);
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& ref : references) {
    auto [matched, total] = Overlap(cand, count_units(ref));
    if (total == 0) continue;
    sum += static_cast<double>(matched) / static_cast<double>(total);
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::kNoReferenceContent, "references have no scoring units");
  return sum / static_cast<double>(used);
}

}  // namespace

TokenList rouge_tokens(std::string_view text) { return word_tokens(text); }

double rouge_n(const TokenList& candidate, const std::vector<TokenList>& references, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n-gram order must be >= 1");
  return MeanRecall(candidate, references, [n](const TokenList& t) { return NGrams(t, n); });
}

double rouge_su4(const TokenList& candidate, const std::vector<TokenList>& references,
                 const SkipBigramUnits& units) {
  return MeanRecall(candidate, references, [&units](const TokenList& t) { return SkipUnits(t, units); });
}

RougeScores rouge_scores(TokenList candidate, const std::vector<TokenList>& references,
                         std::optional<std::size_t> truncate_words) {
  if (truncate_words && candidate.size() > *truncate_words) candidate.resize(*truncate_words);
  RougeScores s;
  s.r1 = rouge_n(candidate, references, 1);
  s.r2 = rouge_n(candidate, references, 2);
  s.rsu4 = rouge_su4(candidate, references);
  s.r_avg = (s.r1 + s.r2 + s.rsu4) / 3.0;
  return s;
}

}  // namespace kwsum
