#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kwsum/embeddings.hpp"
#include "kwsum/textprep.hpp"

namespace kwsum {

// Normalized bag of words over in-vocabulary content words.
struct NBow {
  std::vector<std::string> words;  // distinct, first-occurrence order
  std::vector<double> weights;     // positive, sum to 1
};

// Drops stopwords and words missing from `store`; weights are relative counts.
// Throws Error(kNoComparableContent) if nothing survives.
NBow nbow(const std::vector<std::string>& tokens, const Stoplist& stoplist,
          const EmbeddingStore& store);

// Euclidean distance between two stored words' vectors, in double precision.
double word_distance(const EmbeddingStore& store, const std::string& a, const std::string& b);

// Word Mover's Distance: optimal transport cost between the two
// distributions with Euclidean word-vector distances as ground cost.
double wmd(const NBow& a, const NBow& b, const EmbeddingStore& store);

// Relaxed lower bound on wmd (each side moves all its mass to its nearest
// counterpart). Cheap pruning aid; not used for reported scores.
double relaxed_wmd(const NBow& a, const NBow& b, const EmbeddingStore& store);

struct WesmScore {
  double value = 0.0;
  std::vector<std::pair<std::size_t, double>> per_paragraph;  // (paragraph, wmd)
  std::vector<std::size_t> excluded_paragraphs;  // nothing comparable after filtering
};

// Mean over comparable paragraphs of 1 / (1 + wmd(summary, paragraph)).
// Throws Error(kNoComparableContent) if the summary or every paragraph is
// empty after filtering.
WesmScore wesm(const std::vector<std::string>& summary_tokens, const Document& doc,
               const Stoplist& stoplist, const EmbeddingStore& store);
WesmScore wesm(std::string_view summary_text, const Document& doc, const Stoplist& stoplist,
               const EmbeddingStore& store);

// Lowercased word tokens of one paragraph.
std::vector<std::string> paragraph_words(const Document& doc, std::size_t paragraph);

}  // namespace kwsum
