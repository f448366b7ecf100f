// One line per acceptance criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli/app.hpp"
#include "cli/bench.hpp"
#include "cli/files.hpp"
#include "kwsum/embeddings.hpp"
#include "kwsum/error.hpp"
#include "kwsum/ordering.hpp"
#include "kwsum/ranking.hpp"
#include "kwsum/rouge.hpp"
#include "kwsum/similarity.hpp"
#include "kwsum/summarizer.hpp"
#include "kwsum/transport.hpp"
#include "oracles/dense_lp.hpp"
#include "support/random_docs.hpp"

namespace fs = std::filesystem;
using namespace kwsum;

namespace {

const fs::path kData = KWSUM_TEST_DATA_DIR;

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail << "failed: " << what << "; ";
    }
  }
};

int failures = 0;

void Criterion(const char* name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %s: %s(%.2f s)\n", v.ok ? "PASS" : "FAIL", name, v.detail.str().c_str(), secs);
  std::fflush(stdout);
  if (!v.ok) ++failures;
}

bool Near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string Fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

// ------------------------------------------------------------------ ranking

void RankFlip(Verdict& v) {
  const std::vector<double> s1{2.6, 2.2, 2.1, 0.3, 0.2};
  const std::vector<double> s2{1.6, 1.5, 1.5, 1.5, 1.4};
  const double d1 = rank_keyword_scores(s1, RankMode::kDirect);
  const double d2 = rank_keyword_scores(s2, RankMode::kDirect);
  const double p1 = rank_keyword_scores(s1, RankMode::kSoftplus);
  const double p2 = rank_keyword_scores(s2, RankMode::kSoftplus);
  v.require(Near(d1, 7.4, 1e-9) && Near(d2, 7.5, 1e-9), "direct ranks 7.4 / 7.5");
  v.require(Near(p1, 8.84, 0.01) && Near(p2, 8.51, 0.01), "softplus ranks 8.84 / 8.51 within 0.01");
  v.require(d2 > d1 && p1 > p2, "argmax flips from s2 to s1");
  v.detail << "direct " << Fmt(d1, 2) << " vs " << Fmt(d2, 2) << ", softplus " << Fmt(p1) << " vs " << Fmt(p2) << " ";
}

void SoftplusPointwise(Verdict& v) {
  v.require(Near(softplus(2.6), 2.67, 0.01), "sp(2.6)=2.67");
  v.require(Near(softplus(0.3), 0.85, 0.01), "sp(0.3)=0.85");
  v.require(Near(softplus(1.6), 1.78, 0.01), "sp(1.6)=1.78");
  v.require(Near(softplus(0.0), std::log(2.0), 1e-9), "sp(0)=ln 2");
  double worst = 0.0;
  for (double x = 20.0; x <= 1000.0; x += 0.25) worst = std::max(worst, std::abs(softplus(x) - x));
  for (double x : {1e4, 1e8, 1e300}) worst = std::max(worst, std::abs(softplus(x) - x));
  v.require(worst < 1e-6, "|sp(x)-x| < 1e-6 for x >= 20");
  v.detail << "sp(2.6)=" << Fmt(softplus(2.6)) << " sp(0.3)=" << Fmt(softplus(0.3)) << " sp(1.6)=" << Fmt(softplus(1.6))
           << " max tail gap " << worst << " ";
}

// ------------------------------------------------------------------ ordering

void OrderingReproduction(Verdict& v) {
  const std::vector<double> ravg{34.10, 32.90, 31.73, 32.93, 33.43};
  const std::vector<double> duc{3.382, 3.175, 3.148, 3.150, 3.247};
  const std::vector<double> newsir{2.002, 1.956, 1.923, 1.970, 1.990};
  const Ordering o1 = scores_to_ordering(ravg);
  const Ordering o2 = scores_to_ordering(duc);
  const Ordering o3 = scores_to_ordering(newsir);
  v.require(max_permutation_distance(5) == 12, "D5 = 12");
  v.require(o1.ranks == std::vector<std::size_t>{1, 4, 5, 3, 2}, "O1 = (1,4,5,3,2)");
  v.require(o2.ranks == std::vector<std::size_t>{1, 3, 5, 4, 2}, "O2 = (1,3,5,4,2)");
  const double l12 = normalized_l1(o1, o2);
  const double l13 = normalized_l1(o1, o3);
  v.require(Near(l12, 1.0 / 6.0, 1e-12), "|O1,O2| = 1/6");
  v.require(l13 == 0.0, "|O1,O3| = 0");
  v.detail << "D5=" << max_permutation_distance(5) << " |O1,O2|=" << Fmt(l12, 6) << " |O1,O3|=" << l13 << " ";
}

// ------------------------------------------------------------------ WMD

struct Instance {
  EmbeddingStore store{16};
  std::vector<std::string> words;
};

Instance RandomVectors(std::mt19937& rng, std::size_t count) {
  std::normal_distribution<float> g;
  Instance inst;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<float> vec(16);
    for (auto& x : vec) x = g(rng);
    inst.words.push_back("w" + std::to_string(i));
    inst.store.add(inst.words.back(), vec);
  }
  return inst;
}

NBow RandomBag(std::mt19937& rng, const std::vector<std::string>& vocab) {
  std::vector<std::string> pool = vocab;
  std::shuffle(pool.begin(), pool.end(), rng);
  NBow b;
  const std::size_t n = 1 + rng() % 8;
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    b.words.push_back(pool[i]);
    b.weights.push_back(1.0 + static_cast<double>(rng() % 4));
    total += b.weights.back();
  }
  for (auto& w : b.weights) w /= total;
  return b;
}

void WmdCorrectness(Verdict& v) {
  std::mt19937 rng(20170901);
  double worst_lp = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Instance inst = RandomVectors(rng, 16);
    const NBow a = RandomBag(rng, inst.words);
    const NBow b = RandomBag(rng, inst.words);
    std::vector<double> cost;
    for (const auto& x : a.words)
      for (const auto& y : b.words) cost.push_back(word_distance(inst.store, x, y));
    const auto lp = oracle::TransportLp(a.weights, b.weights, cost);
    v.require(lp.has_value(), "oracle solved every instance");
    if (lp) worst_lp = std::max(worst_lp, std::abs(wmd(a, b, inst.store) - *lp));
  }
  v.require(worst_lp <= 1e-6, "network simplex matches dense LP to 1e-6");

  double worst_identity = 0.0;
  double worst_symmetry = 0.0;
  double worst_triangle = -1e300;
  for (int t = 0; t < 200; ++t) {
    const Instance inst = RandomVectors(rng, 16);
    const NBow a = RandomBag(rng, inst.words);
    const NBow b = RandomBag(rng, inst.words);
    const NBow c = RandomBag(rng, inst.words);
    const double ab = wmd(a, b, inst.store);
    worst_identity = std::max(worst_identity, wmd(a, a, inst.store));
    worst_symmetry = std::max(worst_symmetry, std::abs(ab - wmd(b, a, inst.store)));
    worst_triangle = std::max(worst_triangle, ab - wmd(a, c, inst.store) - wmd(c, b, inst.store));
  }
  v.require(worst_identity <= 1e-6, "identity");
  v.require(worst_symmetry <= 1e-6, "symmetry");
  v.require(worst_triangle <= 1e-6, "triangle inequality");
  v.detail << "max |simplex-LP|=" << worst_lp << " identity=" << worst_identity << " symmetry=" << worst_symmetry
           << " triangle excess=" << worst_triangle << " ";
}

// ------------------------------------------------------------------ WESM

void WesmProperties(Verdict& v) {
  const Stoplist none;
  const EmbeddingStore line = parse_text_embeddings("aa 0 0\nbb 1 0\ncc 2 0\ndd 0 3\n");
  const Document self_doc = load_document("Aa bb cc dd bb.", none);
  const double self = wesm("Aa bb cc dd bb.", self_doc, none, line).value;
  v.require(self == 1.0, "verbatim single-paragraph summary scores exactly 1.0");
  const Document two = load_document("Aa.\n\nBb.", none);
  const double arith = wesm("aa", two, none, line).value;
  v.require(Near(arith, 0.75, 1e-9), "two-paragraph case scores 0.75");

  std::mt19937 rng(7);
  const std::vector<std::string> words{"aa", "bb", "cc", "dd"};
  double lo = 2.0;
  double hi = -1.0;
  for (int t = 0; t < 500; ++t) {
    std::string doc_text;
    const int paras = 1 + static_cast<int>(rng() % 4);
    for (int p = 0; p < paras; ++p) {
      const int n = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < n; ++i) doc_text += words[rng() % 4] + (i + 1 == n ? ".\n\n" : " ");
    }
    std::string summary;
    const int m = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < m; ++i) summary += words[rng() % 4] + " ";
    const double x = wesm(summary, load_document(doc_text, none), none, line).value;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  v.require(lo > 0.0 && hi <= 1.0, "value in (0, 1]");
  v.detail << "self=" << self << " two-paragraph=" << Fmt(arith, 12) << " random range [" << Fmt(lo) << ", " << Fmt(hi)
           << "] ";
}

// ------------------------------------------------------------------ summarizer

void SummarizerProperties(Verdict& v) {
  std::mt19937 rng(1000);
  std::size_t budget_violations = 0;
  std::size_t round_repeats = 0;
  std::size_t nondeterministic = 0;
  std::size_t coverage_misses = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Document doc = load_document(testsupport::RandomDocument(rng));
    const Variant& variant = all_variants()[static_cast<std::size_t>(trial) % all_variants().size()];
    const std::size_t budget = rng() % (doc.char_count() + 20);
    const SummarySpec spec{variant, LengthSpec::Chars(budget)};
    const SummaryRun run = summarize_run(doc, spec, Stoplist::Default());
    const Summary& s = run.summary;
    if (s.char_used > budget) ++budget_violations;
    std::map<std::size_t, std::set<std::size_t>> seen;
    for (std::size_t k = 0; k < s.pick_order.size(); ++k) {
      if (!seen[s.pick_round[k]].insert(run.topics.topic_of[s.pick_order[k]]).second) ++round_repeats;
    }
    const SummaryRun again = summarize_run(doc, spec, Stoplist::Default());
    if (again.summary.selected != s.selected || again.topics.topic_of != run.topics.topic_of) ++nondeterministic;

    std::size_t longest = 0;
    for (const auto& sent : doc.sentences()) longest = std::max(longest, sent.char_length());
    const std::size_t k = run.topics.occupied_topics();
    const Summary roomy = select_sentences(run.ranked, run.topics, k * longest, doc);
    std::set<std::size_t> first;
    for (std::size_t i = 0; i < std::min(k, roomy.pick_order.size()); ++i) {
      first.insert(run.topics.topic_of[roomy.pick_order[i]]);
    }
    if (first.size() != k) ++coverage_misses;
  }
  v.require(budget_violations == 0, "budget safety");
  v.require(round_repeats == 0, "within-round topic distinctness");
  v.require(nondeterministic == 0, "determinism under fixed seed");
  v.require(coverage_misses == 0, "round-robin coverage");
  v.detail << "1000 documents, all 16 variants: budget violations " << budget_violations << ", repeated topics "
           << round_repeats << ", nondeterministic " << nondeterministic << ", coverage misses " << coverage_misses
           << " ";
}

// ------------------------------------------------------------------ ROUGE

void RougeEquivalence(Verdict& v) {
  auto t = [](const char* s) { return rouge_tokens(s); };
  const double r1 = rouge_n(t("the cat ran"), {t("the cat sat")}, 1);
  v.require(Near(r1, 2.0 / 3.0, 1e-15), "ROUGE-1 example = 2/3");
  const double su4 = rouge_su4(t("a d b c"), {t("a b c d")});
  v.require(Near(su4, 0.8, 1e-15), "ROUGE-SU4 example = 8/10");
  SkipBigramUnits pairs;
  pairs.unigrams = false;
  v.require(rouge_su4(t("a b c d"), {t("a b c d")}, pairs) == 1.0, "six skip-bigrams all matched");
  v.require(rouge_n(t("a b"), {t("c d")}, 2) == 0.0, "disjoint bigrams = 0");
  const auto ref = t("Fishing boats were stranded after the storm tore moorings loose.");
  const RougeScores id = rouge_scores(ref, {ref});
  v.require(id.r1 == 1.0 && id.r2 == 1.0 && id.rsu4 == 1.0, "identity candidate scores 1.0");
  v.detail << "R-1=" << Fmt(r1, 6) << " SU4=" << Fmt(su4, 6) << " identity (" << id.r1 << ", " << id.r2 << ", "
           << id.rsu4 << ") ";
}

// ------------------------------------------------------------------ runtime

double LinearFitR2(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
}

void RuntimeTargets(Verdict& v) {
  cli::BenchConfig config;
  config.sizes = cli::default_bench_sizes();
  config.samples = 5;
  config.repeats = 3;
  for (auto name : default_report_variants()) config.variants.emplace_back(name);
  const auto report = cli::run_bench(cli::load_corpus(kData / "corpus"), config, Stoplist::Default());

  for (const auto& vt : report.variants) {
    double worst_ratio = 0.0;  // p95 / limit
    for (const auto& b : vt.buckets) {
      if (b.threshold) worst_ratio = std::max(worst_ratio, b.p95 / *b.threshold);
      if (!b.pass) v.require(false, vt.variant + " at " + std::to_string(b.target_words) + " words");
    }
    v.detail << vt.variant << " 10k p95 " << Fmt(vt.buckets.back().p95, 4) << " s (" << Fmt(100 * worst_ratio, 1)
             << "% of limit); ";
    if (vt.variant == "ESRAKE" || vt.variant == "PRAKE") {
      std::vector<double> xs, ys;
      double spread = 0.0;
      for (const auto& b : vt.buckets) {
        xs.push_back(b.mean_words);
        ys.push_back(b.mean);
        spread = std::max(spread, b.p95 / b.mean);
      }
      const double r2 = LinearFitR2(xs, ys);
      v.require(r2 >= 0.9, vt.variant + " mean time is linear in words (R^2 >= 0.9)");
      v.require(spread <= 1.5, vt.variant + " p95/mean <= 1.5 in every bucket");
      v.detail << vt.variant << " R^2 " << Fmt(r2, 3) << ", max p95/mean " << Fmt(spread, 2) << "; ";
    }
  }
  v.detail << "machine: " << report.machine_note << " ";
}

// ------------------------------------------------------------------ harness

struct CliRun {
  int code;
  std::string out;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kwsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

void FixtureWorkflow(Verdict& v) {
  const fs::path work = fs::temp_directory_path() / "kwsum_acceptance_workflow";
  fs::remove_all(work);
  const std::string sums = (work / "summaries").string();
  std::vector<std::string> args{"summarize", "-o", sums};
  for (auto name : default_report_variants()) {
    args.push_back("-v");
    args.emplace_back(name);
  }
  args.push_back((kData / "corpus").string());
  v.require(Cli(args).code == cli::kExitOk, "summaries written");

  const std::string rouge_table = (work / "rouge.tsv").string();
  v.require(Cli({"rouge", "--summaries", sums, "--references", (kData / "references").string(), "--truncate", "100",
                 "--table-out", rouge_table})
                    .code == cli::kExitOk,
            "ROUGE table");

  // Fixture vectors: deterministic per word, covering the fixture vocabulary.
  EmbeddingStore store(16);
  std::set<std::string> vocab;
  for (const auto& f : cli::list_files(kData / "corpus")) {
    for (auto& w : word_tokens(cli::read_file(f))) vocab.insert(w);
  }
  for (const auto& w : vocab) {
    std::mt19937 rng(static_cast<unsigned>(std::hash<std::string>{}(w)));
    std::normal_distribution<float> g;
    std::vector<float> vec(16);
    for (auto& x : vec) x = g(rng);
    store.add(w, vec);
  }
  cli::write_file(work / "vectors.txt", write_text_embeddings(store));
  const std::string wesm_table = (work / "wesm.tsv").string();
  v.require(Cli({"wesm", "--summaries", sums, "--originals", (kData / "corpus").string(), "--embeddings",
                 (work / "vectors.txt").string(), "--table-out", wesm_table})
                    .code == cli::kExitOk,
            "WESM table");

  const CliRun cmp = Cli({"compare", "--table", rouge_table, "--table", wesm_table});
  v.require(cmp.code == cli::kExitOk, "compare ran");
  std::size_t orderings = 0;
  std::istringstream lines(cmp.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("O", 0) == 0) ++orderings;
    if (line.rfind("L1(", 0) == 0) v.detail << line.substr(0, line.find('\t')) << "=" << line.substr(line.find('\t') + 1) << " ";
  }
  v.require(orderings == 2, "two orderings of the five variants");
  v.detail << "summaries, ROUGE, WESM and orderings produced for " << cli::list_files(kData / "corpus").size()
           << " fixture documents (published DUC-02 scores need the licensed corpus) ";
}

}  // namespace

int main() {
  Criterion("direct vs softplus rank flip", RankFlip);
  Criterion("softplus pointwise", SoftplusPointwise);
  Criterion("ordering reproduction", OrderingReproduction);
  Criterion("WMD correctness", WmdCorrectness);
  Criterion("WESM properties", WesmProperties);
  Criterion("summarizer properties", SummarizerProperties);
  Criterion("ROUGE oracle equivalence", RougeEquivalence);
  Criterion("runtime targets", RuntimeTargets);
  Criterion("corpus workflow substitute", FixtureWorkflow);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
