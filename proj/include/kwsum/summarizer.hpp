#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kwsum/keywords.hpp"
#include "kwsum/ranking.hpp"
#include "kwsum/textprep.hpp"
#include "kwsum/topics.hpp"

namespace kwsum {

// One of the sixteen ranking x clustering x extractor combinations.
struct Variant {
  std::string_view name;
  RankMode mode;
  TopicScheme scheme;
  Extractor extractor;
};

const std::array<Variant, 16>& all_variants();
std::optional<Variant> find_variant(std::string_view name);
// Throws Error(kInvalidArgument) for unknown names.
Variant parse_variant(std::string_view name);

// The variants that are fast enough for realtime use, in reporting order.
const std::array<std::string_view, 5>& default_report_variants();

enum class LengthUnit { kChars, kWords };

struct LengthSpec {
  enum class Kind { kAbsoluteChars, kPercent, kWords };
  Kind kind = Kind::kPercent;
  double value = 30.0;

  static LengthSpec Chars(std::size_t n) { return {Kind::kAbsoluteChars, static_cast<double>(n)}; }
  static LengthSpec Percent(double p) { return {Kind::kPercent, p}; }
  static LengthSpec Words(std::size_t n) { return {Kind::kWords, static_cast<double>(n)}; }

  LengthUnit unit() const { return kind == Kind::kWords ? LengthUnit::kWords : LengthUnit::kChars; }
  // Percent p resolves to floor(p / 100 * char_count). Throws
  // Error(kInvalidArgument) for negative sizes or p outside (0, 100].
  std::size_t resolve(const Document& doc) const;
};

struct SummarySpec {
  Variant variant;
  LengthSpec length;
};

struct Summary {
  std::vector<std::size_t> selected;  // ascending document order
  std::size_t char_used = 0;
  std::size_t words_used = 0;
  std::size_t budget = 0;
  LengthUnit unit = LengthUnit::kChars;
  std::string variant;
  std::size_t rounds = 0;  // times the known-topic set was emptied
  // Selection order, with the round (0-based) each pick was made in.
  std::vector<std::size_t> pick_order;
  std::vector<std::size_t> pick_round;

  std::size_t used() const { return unit == LengthUnit::kChars ? char_used : words_used; }
};

// Top-down scan over `ranked` that keeps at most one sentence per topic until
// every occupied topic is represented, then starts another round from the
// top. Sentences that do not fit the remaining budget are skipped. Stops once
// a full pass selects nothing.
Summary select_sentences(const std::vector<RankedSentence>& ranked, const TopicAssignment& topics,
                         std::size_t budget, const Document& doc,
                         LengthUnit unit = LengthUnit::kChars);

struct SummarizerOptions {
  std::size_t window = 2;
  PageRankParams pagerank;
  TextTilingParams tiling;
  LdaParams lda;
  std::optional<std::size_t> lda_topics;  // defaults to choose_num_topics
};

struct SummaryRun {
  Summary summary;
  KeywordScores keywords;
  std::vector<RankedSentence> ranked;
  TopicAssignment topics;
};

KeywordScores extract_keywords(const Document& doc, Extractor extractor, const Stoplist& stoplist,
                               const SummarizerOptions& options = {});
TopicAssignment cluster_topics(const Document& doc, TopicScheme scheme,
                               const SummarizerOptions& options = {});

SummaryRun summarize_run(const Document& doc, const SummarySpec& spec, const Stoplist& stoplist,
                         const SummarizerOptions& options = {});
Summary summarize(const Document& doc, const SummarySpec& spec, const Stoplist& stoplist,
                  const SummarizerOptions& options = {});

// Selected sentences joined by newlines.
std::string render_summary(const Document& doc, const Summary& summary);

}  // namespace kwsum
