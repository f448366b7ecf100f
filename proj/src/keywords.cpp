#include "kwsum/keywords.hpp"

#include <algorithm>
#include <cmath>

#include "kwsum/error.hpp"

namespace kwsum {

const char* ToString(Extractor e) {
  switch (e) {
    case Extractor::kTextRank:
      return "TextRank";
    case Extractor::kRake:
      return "RAKE";
  }
  return "?";
}

WordGraph::WordGraph(std::vector<std::string> nodes, std::vector<std::vector<Edge>> adjacency,
                     std::size_t window_size)
    : nodes_(std::move(nodes)), adjacency_(std::move(adjacency)), window_size_(window_size) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
  for (auto& edges : adjacency_) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
  }
}

std::size_t WordGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& edges : adjacency_) n += edges.size();
  return n / 2;
}

std::optional<std::size_t> WordGraph::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t WordGraph::weight(const std::string& a, const std::string& b) const {
  auto ia = find(a);
  auto ib = find(b);
  if (!ia || !ib) return 0;
  const auto& edges = adjacency_[*ia];
  auto it = std::lower_bound(edges.begin(), edges.end(), *ib,
                             [](const Edge& e, std::size_t v) { return e.to < v; });
  return (it != edges.end() && it->to == *ib) ? it->weight : 0;
}

void KeywordScores::set(const std::string& keyword, double score) {
  entries_[keyword] = score;
  const auto words = static_cast<std::size_t>(std::count(keyword.begin(), keyword.end(), ' ')) + 1;
  max_phrase_words_ = std::max(max_phrase_words_, words);
}

std::optional<double> KeywordScores::get(const std::string& keyword) const {
  auto it = entries_.find(keyword);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::string, double>> KeywordScores::sorted() const {
  std::vector<std::pair<std::string, double>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

WordGraph build_word_graph(const Document& doc, std::size_t window) {
  if (window < 2) throw Error(ErrorCode::kInvalidArgument, "co-occurrence window must be >= 2");
  std::vector<std::string> nodes;
  std::unordered_map<std::string, std::size_t> index;
  std::unordered_map<std::uint64_t, std::uint32_t> weights;
  std::vector<std::size_t> ids;
  for (const auto& sentence : doc.sentences()) {
    ids.clear();
    for (const auto& t : sentence.content_tokens) {
      auto [it, inserted] = index.emplace(t.normalized, nodes.size());
      if (inserted) nodes.push_back(t.normalized);
      ids.push_back(it->second);
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const std::size_t last = std::min(ids.size(), i + window);
      for (std::size_t j = i + 1; j < last; ++j) {
        if (ids[i] == ids[j]) continue;
        const std::uint64_t lo = std::min(ids[i], ids[j]);
        const std::uint64_t hi = std::max(ids[i], ids[j]);
        ++weights[(lo << 32) | hi];
      }
    }
  }
  std::vector<std::vector<WordGraph::Edge>> adjacency(nodes.size());
  for (const auto& [key, w] : weights) {
    const auto lo = static_cast<std::size_t>(key >> 32);
    const auto hi = static_cast<std::size_t>(key & 0xFFFFFFFFu);
    adjacency[lo].push_back({hi, w});
    adjacency[hi].push_back({lo, w});
  }
  return WordGraph(std::move(nodes), std::move(adjacency), window);
}

KeywordScores textrank_scores(const WordGraph& graph, const PageRankParams& params) {
  const std::size_t n = graph.node_count();
  KeywordScores out(Extractor::kTextRank);
  if (n == 0) return out;

  std::vector<double> out_weight(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& e : graph.neighbors(u)) out_weight[u] += e.weight;
  }
  const double d = params.damping;
  std::vector<double> score(n, 1.0);
  std::vector<double> next(n);
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    double max_delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double acc = 0.0;
      for (const auto& e : graph.neighbors(v)) acc += e.weight / out_weight[e.to] * score[e.to];
      next[v] = (1.0 - d) + d * acc;
      max_delta = std::max(max_delta, std::abs(next[v] - score[v]));
    }
    score.swap(next);
    if (max_delta < params.tolerance) break;
  }
  for (std::size_t v = 0; v < n; ++v) out.set(graph.nodes()[v], score[v]);
  return out;
}

std::vector<std::vector<std::string>> rake_candidates(const Document& doc,
                                                      const Stoplist& stoplist) {
  std::vector<std::vector<std::string>> candidates;
  std::vector<std::string> run;
  for (const auto& sentence : doc.sentences()) {
    for (const auto& t : sentence.tokens) {
      if (t.is_word && !stoplist.contains_normalized(t.normalized)) {
        run.push_back(t.normalized);
      } else if (!run.empty()) {
        candidates.push_back(std::move(run));
        run.clear();
      }
    }
    if (!run.empty()) {
      candidates.push_back(std::move(run));
      run.clear();
    }
  }
  return candidates;
}

KeywordScores rake_scores(const std::vector<std::vector<std::string>>& candidates) {
  std::unordered_map<std::string, double> freq;
  std::unordered_map<std::string, double> degree;
  for (const auto& phrase : candidates) {
    const double co = static_cast<double>(phrase.size()) - 1.0;
    for (const auto& w : phrase) {
      freq[w] += 1.0;
      degree[w] += 1.0 + co;
    }
  }
  KeywordScores out(Extractor::kRake);
  for (const auto& [w, f] : freq) out.set(w, degree[w] / f);
  for (const auto& phrase : candidates) {
    if (phrase.size() < 2) continue;
    double s = 0.0;
    for (const auto& w : phrase) s += degree[w] / freq[w];
    out.set(join_words(phrase, 0, phrase.size()), s);
  }
  return out;
}

KeywordScores rake_scores(const Document& doc, const Stoplist& stoplist) {
  return rake_scores(rake_candidates(doc, stoplist));
}

std::string join_words(const std::vector<std::string>& words, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += words[i];
  }
  return out;
}

}  // namespace kwsum
