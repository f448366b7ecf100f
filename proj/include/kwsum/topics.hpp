#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kwsum/textprep.hpp"

namespace kwsum {

enum class TopicScheme { kTCS, kTCP, kTCTT, kTCLDA };

const char* ToString(TopicScheme scheme);

struct TopicAssignment {
  TopicScheme scheme = TopicScheme::kTCS;
  std::vector<std::size_t> topic_of;  // indexed by sentence
  std::size_t topic_count = 1;

  // Number of distinct topic ids that some sentence actually carries.
  std::size_t occupied_topics() const;
};

TopicAssignment assign_tcs(const Document& doc);
TopicAssignment assign_tcp(const Document& doc);

enum class CutoffPolicy {
  kMeanMinusStdDev,
  kMeanMinusHalfStdDev,
};

struct TextTilingParams {
  std::size_t pseudo_sentence_len = 20;
  std::size_t block_size = 6;
  int smoothing_rounds = 1;
  CutoffPolicy cutoff = CutoffPolicy::kMeanMinusStdDev;
};

// Diagnostics from one TextTiling run, mostly for tests and the CLI.
struct TilingTrace {
  std::size_t pseudo_sentences = 0;
  std::size_t block_size = 0;
  std::vector<double> gap_scores;   // smoothed cohesion per gap
  std::vector<double> depth_scores;
  double cutoff = 0.0;
  std::vector<std::size_t> boundary_gaps;        // gaps chosen before snapping
  std::vector<std::size_t> boundary_paragraphs;  // first paragraph of each later segment
  bool degenerate = false;
};

// Segments the document into runs of whole paragraphs. Documents too short to
// hold two pseudo-sentences, or with a single paragraph, come back as one
// segment with `trace->degenerate` set.
TopicAssignment texttiling_segment(const Document& doc, const TextTilingParams& params = {},
                                   TilingTrace* trace = nullptr);

struct LdaParams {
  std::optional<double> alpha;  // defaults to 50 / K
  double beta = 0.01;
  int iterations = 500;
  std::uint64_t seed = 42;
};

class TopicWordModel {
 public:
  TopicWordModel() = default;
  TopicWordModel(std::vector<std::string> vocabulary, std::vector<std::vector<double>> probs,
                 double alpha, double beta, int iterations, std::uint64_t seed);

  std::size_t topic_count() const { return probs_.size(); }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  // Probability of `word` under `topic`, 0 for words outside the vocabulary.
  double prob(std::size_t topic, const std::string& word) const;
  const std::vector<double>& topic_probs(std::size_t topic) const { return probs_[topic]; }
  std::vector<std::pair<std::string, double>> top_words(std::size_t topic, std::size_t n) const;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  int iterations() const { return iterations_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<double>> probs_;  // [topic][word]
  double alpha_ = 0.0;
  double beta_ = 0.0;
  int iterations_ = 0;
  std::uint64_t seed_ = 0;
};

// Collapsed Gibbs sampling with each sentence as its own mini-document.
// Throws Error(kEmptyDocument) when the document has no content tokens.
TopicWordModel lda_fit(const Document& doc, std::size_t topics, const LdaParams& params = {});

// 5 + one topic per thousand words, clamped to [5, 8].
std::size_t choose_num_topics(const Document& doc);
std::size_t choose_num_topics(std::size_t word_count);

// Probability floor for words a topic does not model.
inline constexpr double kTopicProbabilityFloor = 1e-12;

// Each sentence goes to the topic maximizing the product of its content
// words' probabilities (compared in log space). Ties go to the lowest id;
// sentences without content words go to topic 0.
TopicAssignment lda_assign(const Document& doc, const TopicWordModel& model);

// Topic index maximizing the product for one bag of words.
std::size_t most_likely_topic(const std::vector<std::string>& words, const TopicWordModel& model);

}  // namespace kwsum
