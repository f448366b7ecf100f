#include "kwsum/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kwsum/error.hpp"
#include "kwsum/transport.hpp"

namespace kwsum {

NBow nbow(const std::vector<std::string>& tokens, const Stoplist& stoplist,
          const EmbeddingStore& store) {
  NBow out;
  std::unordered_map<std::string, std::size_t> index;
  double total = 0.0;
  for (const auto& t : tokens) {
    if (stoplist.contains_normalized(t) || !store.lookup_normalized(t)) continue;
    auto [it, inserted] = index.emplace(t, out.words.size());
    if (inserted) {
      out.words.push_back(t);
      out.weights.push_back(0.0);
    }
    out.weights[it->second] += 1.0;
    total += 1.0;
  }
  if (out.words.empty()) {
    throw Error(ErrorCode::kNoComparableContent, "no in-vocabulary content words");
  }
  for (double& w : out.weights) w /= total;
  return out;
}

double word_distance(const EmbeddingStore& store, const std::string& a, const std::string& b) {
  auto va = store.lookup_normalized(a);
  auto vb = store.lookup_normalized(b);
  if (!va || !vb) throw Error(ErrorCode::kInvalidArgument, "word not in embedding store");
  double sum = 0.0;
  for (std::size_t k = 0; k < va->size(); ++k) {
    const double d = static_cast<double>((*va)[k]) - static_cast<double>((*vb)[k]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

std::vector<double> CostMatrix(const NBow& a, const NBow& b, const EmbeddingStore& store) {
  std::vector<double> cost(a.words.size() * b.words.size());
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    for (std::size_t j = 0; j < b.words.size(); ++j) {
      cost[i * b.words.size() + j] =
          a.words[i] == b.words[j] ? 0.0 : word_distance(store, a.words[i], b.words[j]);
    }
  }
  return cost;
}

void CheckNonEmpty(const NBow& a, const NBow& b) {
  if (a.words.empty() || b.words.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "wmd needs non-empty distributions");
  }
}

}  // namespace

double wmd(const NBow& a, const NBow& b, const EmbeddingStore& store) {
  CheckNonEmpty(a, b);
  const auto cost = CostMatrix(a, b, store);
  return solve_transport(a.weights, b.weights, cost).cost;
}

double relaxed_wmd(const NBow& a, const NBow& b, const EmbeddingStore& store) {
  CheckNonEmpty(a, b);
  const auto cost = CostMatrix(a, b, store);
  const std::size_t n = b.words.size();
  double left = 0.0;
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    double best = INFINITY;
    for (std::size_t j = 0; j < n; ++j) best = std::min(best, cost[i * n + j]);
    left += a.weights[i] * best;
  }
  double right = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double best = INFINITY;
    for (std::size_t i = 0; i < a.words.size(); ++i) best = std::min(best, cost[i * n + j]);
    right += b.weights[j] * best;
  }
  return std::max(left, right);
}

std::vector<std::string> paragraph_words(const Document& doc, std::size_t paragraph) {
  const auto& p = doc.paragraphs().at(paragraph);
  std::vector<std::string> words;
  for (std::size_t s = p.first_sentence; s < p.first_sentence + p.sentence_count; ++s) {
    for (const auto& t : doc.sentences()[s].tokens) {
      if (t.is_word) words.push_back(t.normalized);
    }
  }
  return words;
}

WesmScore wesm(const std::vector<std::string>& summary_tokens, const Document& doc,
               const Stoplist& stoplist, const EmbeddingStore& store) {
  const NBow summary = nbow(summary_tokens, stoplist, store);
  WesmScore out;
  double total = 0.0;
  for (const auto& p : doc.paragraphs()) {
    NBow para;
    try {
      para = nbow(paragraph_words(doc, p.index), stoplist, store);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoComparableContent) throw;
      out.excluded_paragraphs.push_back(p.index);
      continue;
    }
    const double d = wmd(summary, para, store);
    out.per_paragraph.emplace_back(p.index, d);
    total += 1.0 / (1.0 + d);
  }
  if (out.per_paragraph.empty()) {
    throw Error(ErrorCode::kNoComparableContent, "no paragraph has comparable content");
  }
  out.value = total / static_cast<double>(out.per_paragraph.size());
  return out;
}

WesmScore wesm(std::string_view summary_text, const Document& doc, const Stoplist& stoplist,
               const EmbeddingStore& store) {
  return wesm(word_tokens(summary_text), doc, stoplist, store);
}

}  // namespace kwsum
