#include "kwsum/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kwsum/error.hpp"

namespace kwsum {

namespace {

using enum RankMode;
using enum TopicScheme;
using enum Extractor;

constexpr std::array<Variant, 16> kVariants = {{
    {"ESTRank", kSoftplus, kTCS, kTextRank},
    {"EPTRank", kSoftplus, kTCP, kTextRank},
    {"ET3Rank", kSoftplus, kTCTT, kTextRank},
    {"ELDATRank", kSoftplus, kTCLDA, kTextRank},
    {"ESRAKE", kSoftplus, kTCS, kRake},
    {"EPRAKE", kSoftplus, kTCP, kRake},
    {"ET2RAKE", kSoftplus, kTCTT, kRake},
    {"ELDARAKE", kSoftplus, kTCLDA, kRake},
    {"STRank", kDirect, kTCS, kTextRank},
    {"PTRank", kDirect, kTCP, kTextRank},
    {"T3Rank", kDirect, kTCTT, kTextRank},
    {"LDATRank", kDirect, kTCLDA, kTextRank},
    {"SRAKE", kDirect, kTCS, kRake},
    {"PRAKE", kDirect, kTCP, kRake},
    {"T2RAKE", kDirect, kTCTT, kRake},
    {"LDARAKE", kDirect, kTCLDA, kRake},
}};

constexpr std::array<std::string_view, 5> kReportVariants = {"ET3Rank", "ESRAKE", "ET2RAKE",
                                                             "PRAKE", "T2RAKE"};

}  // namespace

const std::array<Variant, 16>& all_variants() { return kVariants; }

const std::array<std::string_view, 5>& default_report_variants() { return kReportVariants; }

std::optional<Variant> find_variant(std::string_view name) {
  for (const auto& v : kVariants) {
    if (v.name == name) return v;
  }
  return std::nullopt;
}

Variant parse_variant(std::string_view name) {
  if (auto v = find_variant(name)) return *v;
  throw Error(ErrorCode::kInvalidArgument, "unknown variant '" + std::string(name) + "'");
}

std::size_t LengthSpec::resolve(const Document& doc) const {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "summary length must be a non-negative number");
  }
  switch (kind) {
    case Kind::kAbsoluteChars:
    case Kind::kWords:
      return static_cast<std::size_t>(value);
    case Kind::kPercent:
      if (!(value > 0.0 && value <= 100.0)) {
        throw Error(ErrorCode::kInvalidArgument, "summary percentage must be in (0, 100]");
      }
      return static_cast<std::size_t>(std::floor(value / 100.0 * static_cast<double>(doc.char_count())));
  }
  return 0;
}

Summary select_sentences(const std::vector<RankedSentence>& ranked, const TopicAssignment& topics,
                         std::size_t budget, const Document& doc, LengthUnit unit) {
  Summary out;
  out.budget = budget;
  out.unit = unit;

  const auto& sentences = doc.sentences();
  std::vector<std::size_t> cost(sentences.size());
  std::vector<std::size_t> words(sentences.size());
  for (const auto& s : sentences) {
    words[s.index] = whitespace_word_count(doc.text(s.bytes));
    cost[s.index] = unit == LengthUnit::kChars ? s.char_length() : words[s.index];
  }

  const std::size_t topic_total = topics.occupied_topics();
  std::vector<bool> chosen(sentences.size(), false);
  std::set<std::size_t> known;
  std::size_t used = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& r : ranked) {
      const std::size_t i = r.sentence_index;
      if (chosen[i] || cost[i] > budget - used) continue;
      const std::size_t topic = topics.topic_of[i];
      if (known.count(topic)) continue;
      chosen[i] = true;
      used += cost[i];
      out.char_used += sentences[i].char_length();
      out.words_used += words[i];
      known.insert(topic);
      out.pick_order.push_back(i);
      out.pick_round.push_back(out.rounds);
      progress = true;
      if (known.size() == topic_total) {
        known.clear();
        ++out.rounds;
        break;  // restart from the top
      }
    }
  }

  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) out.selected.push_back(i);
  }
  return out;
}

KeywordScores extract_keywords(const Document& doc, Extractor extractor, const Stoplist& stoplist,
                               const SummarizerOptions& options) {
  if (extractor == kRake) return rake_scores(doc, stoplist);
  return textrank_scores(build_word_graph(doc, options.window), options.pagerank);
}

TopicAssignment cluster_topics(const Document& doc, TopicScheme scheme,
                               const SummarizerOptions& options) {
  switch (scheme) {
    case kTCS:
      return assign_tcs(doc);
    case kTCP:
      return assign_tcp(doc);
    case kTCTT:
      return texttiling_segment(doc, options.tiling);
    case kTCLDA: {
      const std::size_t k = options.lda_topics.value_or(choose_num_topics(doc));
      return lda_assign(doc, lda_fit(doc, k, options.lda));
    }
  }
  return assign_tcs(doc);
}

SummaryRun summarize_run(const Document& doc, const SummarySpec& spec, const Stoplist& stoplist,
                         const SummarizerOptions& options) {
  SummaryRun run;
  run.keywords = extract_keywords(doc, spec.variant.extractor, stoplist, options);
  run.ranked = rank_all(doc, run.keywords, spec.variant.mode);
  run.topics = cluster_topics(doc, spec.variant.scheme, options);
  run.summary = select_sentences(run.ranked, run.topics, spec.length.resolve(doc), doc,
                                 spec.length.unit());
  run.summary.variant = std::string(spec.variant.name);
  return run;
}

Summary summarize(const Document& doc, const SummarySpec& spec, const Stoplist& stoplist,
                  const SummarizerOptions& options) {
  return summarize_run(doc, spec, stoplist, options).summary;
}

std::string render_summary(const Document& doc, const Summary& summary) {
  std::string out;
  for (std::size_t i : summary.selected) {
    if (!out.empty()) out.push_back('\n');
    out += doc.sentence_text(i);
  }
  return out;
}

}  // namespace kwsum
