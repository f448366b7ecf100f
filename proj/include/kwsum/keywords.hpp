#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kwsum/textprep.hpp"

namespace kwsum {

enum class Extractor { kTextRank, kRake };

const char* ToString(Extractor e);

// Undirected co-occurrence graph over a document's content words. Edge
// weights count how often two distinct words fall inside the same window.
class WordGraph {
 public:
  struct Edge {
    std::size_t to;
    std::uint32_t weight;
  };

  WordGraph() = default;
  WordGraph(std::vector<std::string> nodes, std::vector<std::vector<Edge>> adjacency,
            std::size_t window_size);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& neighbors(std::size_t node) const { return adjacency_[node]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;
  std::size_t window_size() const { return window_size_; }

  std::optional<std::size_t> find(const std::string& word) const;
  // 0 when the words are unknown or not adjacent.
  std::uint32_t weight(const std::string& a, const std::string& b) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<Edge>> adjacency_;  // sorted by `to`
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t window_size_ = 2;
};

// Keyword (single word or space-joined phrase) to non-negative score.
class KeywordScores {
 public:
  KeywordScores() = default;
  explicit KeywordScores(Extractor extractor) : extractor_(extractor) {}

  void set(const std::string& keyword, double score);
  std::optional<double> get(const std::string& keyword) const;
  bool contains(const std::string& keyword) const { return entries_.count(keyword) > 0; }

  Extractor extractor() const { return extractor_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Number of words in the longest key.
  std::size_t max_phrase_words() const { return max_phrase_words_; }
  const std::unordered_map<std::string, double>& entries() const { return entries_; }

  // Entries by descending score, ties by key.
  std::vector<std::pair<std::string, double>> sorted() const;

 private:
  Extractor extractor_ = Extractor::kTextRank;
  std::unordered_map<std::string, double> entries_;
  std::size_t max_phrase_words_ = 0;
};

struct PageRankParams {
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 100;
};

// Co-occurrence is counted among content tokens (stopwords already removed);
// windows never cross sentence boundaries. `window` must be >= 2.
WordGraph build_word_graph(const Document& doc, std::size_t window = 2);

// Weighted PageRank, synchronous updates from an all-ones start.
KeywordScores textrank_scores(const WordGraph& graph, const PageRankParams& params = {});

// Maximal runs of non-stopword words within each sentence, lowercased.
std::vector<std::vector<std::string>> rake_candidates(const Document& doc, const Stoplist& stoplist);

// Word score deg(w)/freq(w); phrase score is the sum of its word scores.
KeywordScores rake_scores(const std::vector<std::vector<std::string>>& candidates);
KeywordScores rake_scores(const Document& doc, const Stoplist& stoplist);

std::string join_words(const std::vector<std::string>& words, std::size_t begin, std::size_t end);

}  // namespace kwsum
