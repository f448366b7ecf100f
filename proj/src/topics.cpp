#include "kwsum/topics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "kwsum/error.hpp"

namespace kwsum {

const char* ToString(TopicScheme scheme) {
  switch (scheme) {
    case TopicScheme::kTCS:
      return "TCS";
    case TopicScheme::kTCP:
      return "TCP";
    case TopicScheme::kTCTT:
      return "TCTT";
    case TopicScheme::kTCLDA:
      return "TCLDA";
  }
  return "?";
}

std::size_t TopicAssignment::occupied_topics() const {
  std::set<std::size_t> seen(topic_of.begin(), topic_of.end());
  return seen.size();
}

TopicAssignment assign_tcs(const Document& doc) {
  return TopicAssignment{TopicScheme::kTCS, std::vector<std::size_t>(doc.sentences().size(), 0), 1};
}

TopicAssignment assign_tcp(const Document& doc) {
  TopicAssignment out{TopicScheme::kTCP, {}, doc.paragraphs().size()};
  out.topic_of.reserve(doc.sentences().size());
  for (const auto& s : doc.sentences()) out.topic_of.push_back(s.paragraph_index);
  return out;
}

// ---------------------------------------------------------------------------
// TextTiling

namespace {

using Counts = std::unordered_map<std::string, double>;

double Cosine(const Counts& a, const Counts& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [w, c] : a) {
    na += c * c;
    auto it = b.find(w);
    if (it != b.end()) dot += c * it->second;
  }
  for (const auto& [w, c] : b) nb += c * c;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

std::vector<double> Smooth(const std::vector<double>& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    double sum = s[i];
    int n = 1;
    if (i > 0) {
      sum += s[i - 1];
      ++n;
    }
    if (i + 1 < s.size()) {
      sum += s[i + 1];
      ++n;
    }
    out[i] = sum / n;
  }
  return out;
}

std::vector<double> DepthScores(const std::vector<double>& s) {
  std::vector<double> depth(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    double left = s[i];
    for (std::size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) left = s[j - 1];
    double right = s[i];
    for (std::size_t j = i; j + 1 < s.size() && s[j + 1] >= s[j]; ++j) right = s[j + 1];
    depth[i] = (left - s[i]) + (right - s[i]);
  }
  return depth;
}

constexpr double kMinDepth = 1e-9;

}  // namespace

TopicAssignment texttiling_segment(const Document& doc, const TextTilingParams& params,
                                   TilingTrace* trace) {
  TilingTrace local;
  TilingTrace& tr = trace ? *trace : local;
  tr = TilingTrace{};

  const auto& paragraphs = doc.paragraphs();
  TopicAssignment out{TopicScheme::kTCTT, std::vector<std::size_t>(doc.sentences().size(), 0), 1};

  // Content tokens in document order, and the token offset at which each
  // paragraph starts.
  std::vector<const std::string*> tokens;
  std::vector<std::size_t> paragraph_start(paragraphs.size(), 0);
  for (const auto& p : paragraphs) {
    paragraph_start[p.index] = tokens.size();
    for (std::size_t s = p.first_sentence; s < p.first_sentence + p.sentence_count; ++s) {
      for (const auto& t : doc.sentences()[s].content_tokens) tokens.push_back(&t.normalized);
    }
  }

  const std::size_t w = std::max<std::size_t>(1, params.pseudo_sentence_len);
  const std::size_t n_ps = (tokens.size() + w - 1) / w;
  tr.pseudo_sentences = n_ps;
  if (paragraphs.size() < 2 || n_ps < 2) {
    tr.degenerate = true;
    return out;
  }
  const std::size_t b = std::clamp<std::size_t>(params.block_size, 1, n_ps / 2);
  tr.block_size = b;

  std::vector<Counts> ps(n_ps);
  for (std::size_t i = 0; i < tokens.size(); ++i) ps[i / w][*tokens[i]] += 1.0;

  const std::size_t gaps = n_ps - 1;
  std::vector<double> score(gaps);
  for (std::size_t g = 0; g < gaps; ++g) {
    Counts left;
    Counts right;
    for (std::size_t i = (g + 1 >= b ? g + 1 - b : 0); i <= g; ++i) {
      for (const auto& [word, c] : ps[i]) left[word] += c;
    }
    for (std::size_t i = g + 1; i <= std::min(n_ps - 1, g + b); ++i) {
      for (const auto& [word, c] : ps[i]) right[word] += c;
    }
    score[g] = Cosine(left, right);
  }
  for (int r = 0; r < params.smoothing_rounds; ++r) score = Smooth(score);
  const std::vector<double> depth = DepthScores(score);

  const double mean = std::accumulate(depth.begin(), depth.end(), 0.0) / static_cast<double>(gaps);
  double var = 0.0;
  for (double d : depth) var += (d - mean) * (d - mean);
  const double sd = std::sqrt(var / static_cast<double>(gaps));
  const double cutoff =
      params.cutoff == CutoffPolicy::kMeanMinusStdDev ? mean - sd : mean - sd / 2.0;

  std::set<std::size_t> chosen;
  for (std::size_t g = 0; g < gaps; ++g) {
    const bool valley = (g == 0 || score[g] <= score[g - 1]) &&
                        (g + 1 == gaps || score[g] <= score[g + 1]);
    if (!valley || depth[g] <= kMinDepth || depth[g] <= cutoff) continue;
    tr.boundary_gaps.push_back(g);
    // Snap to the nearest paragraph start strictly inside the token stream.
    const std::size_t pos = (g + 1) * w;
    std::size_t best = 0;
    std::size_t best_dist = SIZE_MAX;
    for (std::size_t p = 1; p < paragraphs.size(); ++p) {
      const std::size_t start = paragraph_start[p];
      if (start == 0 || start >= tokens.size()) continue;
      const std::size_t dist = start > pos ? start - pos : pos - start;
      if (dist < best_dist) {
        best_dist = dist;
        best = p;
      }
    }
    if (best != 0) chosen.insert(best);
  }

  tr.gap_scores = score;
  tr.depth_scores = depth;
  tr.cutoff = cutoff;
  tr.boundary_paragraphs.assign(chosen.begin(), chosen.end());

  std::vector<std::size_t> segment_of(paragraphs.size(), 0);
  std::size_t seg = 0;
  for (std::size_t p = 0; p < paragraphs.size(); ++p) {
    if (chosen.count(p)) ++seg;
    segment_of[p] = seg;
  }
  for (const auto& s : doc.sentences()) out.topic_of[s.index] = segment_of[s.paragraph_index];
  out.topic_count = seg + 1;
  return out;
}

// ---------------------------------------------------------------------------
// LDA

TopicWordModel::TopicWordModel(std::vector<std::string> vocabulary,
                               std::vector<std::vector<double>> probs, double alpha, double beta,
                               int iterations, std::uint64_t seed)
    : vocabulary_(std::move(vocabulary)),
      probs_(std::move(probs)),
      alpha_(alpha),
      beta_(beta),
      iterations_(iterations),
      seed_(seed) {
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) index_.emplace(vocabulary_[i], i);
}

double TopicWordModel::prob(std::size_t topic, const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? 0.0 : probs_.at(topic)[it->second];
}

std::vector<std::pair<std::string, double>> TopicWordModel::top_words(std::size_t topic,
                                                                      std::size_t n) const {
  std::vector<std::pair<std::string, double>> out;
  const auto& p = probs_.at(topic);
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) out.emplace_back(vocabulary_[i], p[i]);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > n) out.resize(n);
  return out;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; std::uniform_real_distribution
// is not specified bit-exactly across standard libraries.
double Uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TopicWordModel lda_fit(const Document& doc, std::size_t topics, const LdaParams& params) {
  if (topics == 0) throw Error(ErrorCode::kInvalidArgument, "LDA needs at least one topic");
  std::vector<std::string> vocab;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> docs;
  for (const auto& s : doc.sentences()) {
    if (s.content_tokens.empty()) continue;
    auto& ids = docs.emplace_back();
    for (const auto& t : s.content_tokens) {
      auto [it, inserted] = index.emplace(t.normalized, vocab.size());
      if (inserted) vocab.push_back(t.normalized);
      ids.push_back(it->second);
    }
  }
  if (vocab.empty()) throw Error(ErrorCode::kEmptyDocument, "document has no content tokens");

  const std::size_t K = topics;
  const std::size_t V = vocab.size();
  const double alpha = params.alpha.value_or(50.0 / static_cast<double>(K));
  const double beta = params.beta;
  const double vbeta = static_cast<double>(V) * beta;

  std::mt19937_64 rng(params.seed);
  std::vector<std::vector<std::size_t>> z(docs.size());
  std::vector<std::vector<double>> n_dk(docs.size(), std::vector<double>(K, 0.0));
  std::vector<std::vector<double>> n_kw(K, std::vector<double>(V, 0.0));
  std::vector<double> n_k(K, 0.0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    z[d].resize(docs[d].size());
    for (std::size_t i = 0; i < docs[d].size(); ++i) {
      const auto k = std::min(K - 1, static_cast<std::size_t>(Uniform(rng) * static_cast<double>(K)));
      z[d][i] = k;
      n_dk[d][k] += 1;
      n_kw[k][docs[d][i]] += 1;
      n_k[k] += 1;
    }
  }

  std::vector<double> cumulative(K);
  for (int iter = 0; iter < params.iterations && K > 1; ++iter) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t i = 0; i < docs[d].size(); ++i) {
        const std::size_t w = docs[d][i];
        std::size_t k = z[d][i];
        n_dk[d][k] -= 1;
        n_kw[k][w] -= 1;
        n_k[k] -= 1;
        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (n_dk[d][t] + alpha) * (n_kw[t][w] + beta) / (n_k[t] + vbeta);
          cumulative[t] = total;
        }
        const double u = Uniform(rng) * total;
        k = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        k = std::min(k, K - 1);
        z[d][i] = k;
        n_dk[d][k] += 1;
        n_kw[k][w] += 1;
        n_k[k] += 1;
      }
    }
  }

  std::vector<std::vector<double>> probs(K, std::vector<double>(V));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t w = 0; w < V; ++w) probs[k][w] = (n_kw[k][w] + beta) / (n_k[k] + vbeta);
  }
  return TopicWordModel(std::move(vocab), std::move(probs), alpha, beta, params.iterations,
                        params.seed);
}

std::size_t choose_num_topics(std::size_t word_count) {
  return std::clamp<std::size_t>(5 + word_count / 1000, 5, 8);
}

std::size_t choose_num_topics(const Document& doc) { return choose_num_topics(doc.word_count()); }

std::size_t most_likely_topic(const std::vector<std::string>& words, const TopicWordModel& model) {
  if (words.empty()) return 0;
  // Log-likelihoods this close count as a tie so that equal products are not
  // separated by summation-order rounding.
  constexpr double kTieTolerance = 1e-9;
  std::size_t best = 0;
  double best_ll = -INFINITY;
  for (std::size_t k = 0; k < model.topic_count(); ++k) {
    double ll = 0.0;
    for (const auto& w : words) {
      const double p = model.prob(k, w);
      ll += std::log(p > 0.0 ? p : kTopicProbabilityFloor);
    }
    if (ll > best_ll + kTieTolerance) {
      best = k;
      best_ll = ll;
    }
  }
  return best;
}

TopicAssignment lda_assign(const Document& doc, const TopicWordModel& model) {
  TopicAssignment out{TopicScheme::kTCLDA, {}, model.topic_count()};
  out.topic_of.reserve(doc.sentences().size());
  std::vector<std::string> words;
  for (const auto& s : doc.sentences()) {
    words.clear();
    for (const auto& t : s.content_tokens) words.push_back(t.normalized);
    out.topic_of.push_back(most_likely_topic(words, model));
  }
  return out;
}

}  // namespace kwsum
