#include "cli/app.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <json.hpp>

#include "cli/bench.hpp"
#include "cli/files.hpp"
#include "kwsum/embeddings.hpp"
#include "kwsum/error.hpp"
#include "kwsum/ordering.hpp"
#include "kwsum/rouge.hpp"
#include "kwsum/similarity.hpp"
#include "kwsum/summarizer.hpp"

namespace kwsum::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kEmbeddingsEnv = "KWSUM_EMBEDDINGS";

// Raised for bad flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string stoplist_path;
  std::uint64_t seed = 42;
  std::string format = "text";
  std::size_t jobs = 1;

  bool jsonl() const { return format == "jsonl"; }

  Stoplist stoplist() const {
    return stoplist_path.empty() ? Stoplist::Default() : Stoplist::FromFile(stoplist_path);
  }
  SummarizerOptions options() const {
    SummarizerOptions o;
    o.lda.seed = seed;
    return o;
  }
};

void AddCommon(CLI::App* cmd, Common& c, bool with_jobs) {
  cmd->add_option("--stoplist", c.stoplist_path, "Stopword file, one word per line")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Seed for LDA sampling and synthetic documents");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "jsonl"}));
  if (with_jobs) cmd->add_option("--jobs,-j", c.jobs, "Documents processed in parallel")->check(CLI::PositiveNumber);
}

const CLI::Validator kVariantName(
    [](std::string& name) -> std::string {
      if (find_variant(name)) return "";
      std::string names;
      for (const auto& v : all_variants()) names += std::string(names.empty() ? "" : ", ") + std::string(v.name);
      return "unknown variant '" + name + "' (expected one of: " + names + ")";
    },
    "VARIANT");

struct LengthFlags {
  std::optional<double> percent;
  std::optional<std::size_t> chars;
  std::optional<std::size_t> words;

  void add(CLI::App* cmd) {
    auto* p = cmd->add_option("--percent", percent, "Budget as a percentage of the document's characters (default 30)")
                  ->check(CLI::Range(0.0, 100.0));
    auto* c = cmd->add_option("--chars", chars, "Budget in characters");
    auto* w = cmd->add_option("--words", words, "Budget in words");
    p->excludes(c)->excludes(w);
    c->excludes(w);
  }
  LengthSpec spec() const {
    if (chars) return LengthSpec::Chars(*chars);
    if (words) return LengthSpec::Words(*words);
    const double pct = percent.value_or(30.0);
    if (!(pct > 0.0)) throw UsageError("--percent must be greater than 0");
    return LengthSpec::Percent(pct);
  }
};

const char* UnitName(LengthUnit u) { return u == LengthUnit::kWords ? "words" : "chars"; }

std::vector<std::string> OrDefaultVariants(std::vector<std::string> v) {
  if (!v.empty()) return v;
  for (auto name : default_report_variants()) v.emplace_back(name);
  return v;
}

void Warn(std::ostream& err, const std::string& msg) { err << "warning: " << msg << '\n'; }

std::string Fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

// ---------------------------------------------------------------- summarize

struct SummarizeArgs {
  Common common;
  std::vector<std::string> variants;
  LengthFlags length;
  std::string output_dir;
  std::vector<std::string> inputs;
};

json SummaryRecord(const std::string& document, const Document& doc, const SummaryRun& run) {
  const Summary& s = run.summary;
  std::map<std::size_t, double> score_of;
  for (const auto& r : run.ranked) score_of[r.sentence_index] = r.score;
  json sentences = json::array();
  for (std::size_t idx : s.selected) {
    sentences.push_back({{"index", idx},
                         {"text", std::string(doc.sentence_text(idx))},
                         {"score", score_of[idx]},
                         {"topic", run.topics.topic_of[idx]}});
  }
  const double compression =
      doc.char_count() ? static_cast<double>(s.char_used) / static_cast<double>(doc.char_count()) : 0.0;
  return {{"command", "summarize"},
          {"document", document},
          {"variant", s.variant},
          {"budget", s.budget},
          {"unit", UnitName(s.unit)},
          {"char_used", s.char_used},
          {"words_used", s.words_used},
          {"char_count", doc.char_count()},
          {"topics", run.topics.topic_count},
          {"rounds", s.rounds},
          {"sentences", sentences},
          {"scores", {{"compression", compression}}}};
}

int RunSummarize(const SummarizeArgs& a, std::ostream& out, std::ostream& err) {
  const Stoplist stoplist = a.common.stoplist();
  const SummarizerOptions options = a.common.options();
  const LengthSpec length = a.length.spec();
  std::vector<Variant> variants;
  for (const auto& name : a.variants.empty() ? std::vector<std::string>{"ET3Rank"} : a.variants) {
    variants.push_back(parse_variant(name));
  }
  std::vector<fs::path> files;
  for (const auto& in : a.inputs) {
    for (auto& f : list_files(in)) files.push_back(std::move(f));
  }

  struct Result {
    std::string text;
    json record;
    std::string error;
  };
  const std::size_t nv = variants.size();
  std::vector<Result> results(files.size() * nv);
  parallel_for(files.size(), a.common.jobs, [&](std::size_t i) {
    try {
      const Document doc = load_document(read_file(files[i]), stoplist);
      for (std::size_t v = 0; v < nv; ++v) {
        const SummaryRun run = summarize_run(doc, SummarySpec{variants[v], length}, stoplist, options);
        results[i * nv + v].text = render_summary(doc, run.summary);
        if (a.common.jsonl()) results[i * nv + v].record = SummaryRecord(files[i].string(), doc, run);
      }
    } catch (const Error& e) {
      for (std::size_t v = 0; v < nv; ++v) results[i * nv + v].error = e.what();
    }
  });

  int status = kExitOk;
  const bool banner = files.size() * nv > 1;
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (std::size_t v = 0; v < nv; ++v) {
      const Result& r = results[i * nv + v];
      const std::string variant(variants[v].name);
      if (!r.error.empty()) {
        err << "error: " << files[i].string() << " [" << variant << "]: " << r.error << '\n';
        status = kExitRuntime;
        continue;
      }
      if (!a.output_dir.empty()) {
        write_file(fs::path(a.output_dir) / (file_stem(files[i]) + "." + variant + ".txt"), r.text + "\n");
      }
      if (a.common.jsonl()) {
        out << r.record.dump() << '\n';
      } else if (a.output_dir.empty()) {
        if (banner) out << "==> " << files[i].string() << " [" << variant << "] <==\n";
        out << r.text << '\n';
      }
    }
  }
  return status;
}

// ---------------------------------------------------------------- keywords

struct KeywordsArgs {
  Common common;
  std::string extractor = "textrank";
  std::size_t top = 0;
  std::vector<std::string> inputs;
};

int RunKeywords(const KeywordsArgs& a, std::ostream& out, std::ostream& err) {
  const Stoplist stoplist = a.common.stoplist();
  const Extractor ex = a.extractor == "rake" ? Extractor::kRake : Extractor::kTextRank;
  int status = kExitOk;
  for (const auto& in : a.inputs) {
    for (const auto& f : list_files(in)) {
      try {
        const Document doc = load_document(read_file(f), stoplist);
        auto sorted = extract_keywords(doc, ex, stoplist, a.common.options()).sorted();
        if (a.top > 0 && sorted.size() > a.top) sorted.resize(a.top);
        if (a.common.jsonl()) {
          json kws = json::array();
          for (const auto& [k, s] : sorted) kws.push_back({{"keyword", k}, {"score", s}});
          out << json{{"command", "keywords"}, {"document", f.string()}, {"extractor", ToString(ex)},
                      {"keywords", kws}}.dump()
              << '\n';
        } else {
          for (const auto& [k, s] : sorted) out << Fixed(s, 6) << '\t' << k << '\n';
        }
      } catch (const Error& e) {
        err << "error: " << f.string() << ": " << e.what() << '\n';
        status = kExitRuntime;
      }
    }
  }
  return status;
}

// ---------------------------------------------------------------- topics

struct TopicsArgs {
  Common common;
  std::string scheme = "TCTT";
  std::optional<std::size_t> topics;
  std::vector<std::string> inputs;
};

int RunTopics(const TopicsArgs& a, std::ostream& out, std::ostream& err) {
  const Stoplist stoplist = a.common.stoplist();
  SummarizerOptions options = a.common.options();
  options.lda_topics = a.topics;
  TopicScheme scheme = TopicScheme::kTCTT;
  if (a.scheme == "TCS") scheme = TopicScheme::kTCS;
  if (a.scheme == "TCP") scheme = TopicScheme::kTCP;
  if (a.scheme == "TCLDA") scheme = TopicScheme::kTCLDA;
  int status = kExitOk;
  for (const auto& in : a.inputs) {
    for (const auto& f : list_files(in)) {
      try {
        const Document doc = load_document(read_file(f), stoplist);
        const TopicAssignment t = cluster_topics(doc, scheme, options);
        if (a.common.jsonl()) {
          out << json{{"command", "topics"}, {"document", f.string()}, {"scheme", ToString(scheme)},
                      {"topic_count", t.topic_count}, {"topic_of", t.topic_of}}.dump()
              << '\n';
        } else {
          for (std::size_t i = 0; i < t.topic_of.size(); ++i) {
            out << i << '\t' << t.topic_of[i] << '\t' << doc.sentence_text(i) << '\n';
          }
        }
      } catch (const Error& e) {
        err << "error: " << f.string() << ": " << e.what() << '\n';
        status = kExitRuntime;
      }
    }
  }
  return status;
}

// ------------------------------------------------------ summaries by variant

// summaries[variant][stem] = path. Files named "<stem>.<variant>.txt"; files
// without a variant component go under `fallback`.
using SummaryIndex = std::map<std::string, std::map<std::string, fs::path>>;

SummaryIndex IndexSummaries(const std::string& dir, const std::vector<std::string>& wanted,
                            const std::string& fallback) {
  SummaryIndex index;
  for (const auto& f : list_files(dir)) {
    std::string tag = file_tag(f);
    if (tag.empty()) tag = fallback;
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), tag) == wanted.end()) continue;
    index[tag][file_stem(f)] = f;
  }
  return index;
}

// Variant order: as requested, else the reporting order for known names and
// alphabetical for the rest.
std::vector<std::string> VariantOrder(const SummaryIndex& index, const std::vector<std::string>& wanted) {
  if (!wanted.empty()) return wanted;
  std::vector<std::string> order;
  for (auto name : default_report_variants()) {
    if (index.count(std::string(name))) order.emplace_back(name);
  }
  for (const auto& [name, _] : index) {
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  }
  return order;
}

json EvalRecord(const std::string& command, const std::string& document, const std::string& variant,
                std::size_t char_used, json scores) {
  return {{"command", command}, {"document", document},    {"variant", variant},
          {"budget", nullptr},  {"char_used", char_used}, {"sentences", json::array()},
          {"scores", std::move(scores)}};
}

std::size_t CharCount(const std::string& text) {
  std::size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

// ---------------------------------------------------------------- rouge

struct RougeArgs {
  Common common;
  std::string summaries;
  std::string references;
  std::vector<std::string> variants;
  std::optional<std::size_t> truncate;
  std::string table_out;
};

int RunRouge(const RougeArgs& a, std::ostream& out, std::ostream& err) {
  std::map<std::string, std::vector<TokenList>> refs;
  for (const auto& f : list_files(a.references)) refs[file_stem(f)].push_back(rouge_tokens(read_file(f)));
  const SummaryIndex index = IndexSummaries(a.summaries, a.variants, "summary");
  const auto order = VariantOrder(index, a.variants);

  std::vector<std::vector<double>> table;  // per variant: mean R1, R2, SU4, AVG
  for (const auto& variant : order) {
    auto it = index.find(variant);
    if (it == index.end()) {
      Warn(err, "no summaries for variant " + variant);
      table.push_back({});
      continue;
    }
    std::vector<std::pair<std::string, fs::path>> docs(it->second.begin(), it->second.end());
    std::vector<std::optional<RougeScores>> scores(docs.size());
    std::vector<std::string> problems(docs.size());
    std::vector<std::size_t> chars(docs.size());
    parallel_for(docs.size(), a.common.jobs, [&](std::size_t i) {
      const auto r = refs.find(docs[i].first);
      if (r == refs.end()) {
        problems[i] = "no reference for " + docs[i].first;
        return;
      }
      try {
        const std::string text = read_file(docs[i].second);
        chars[i] = CharCount(text);
        scores[i] = rouge_scores(rouge_tokens(text), r->second, a.truncate);
      } catch (const Error& e) {
        problems[i] = docs[i].first + ": " + e.what();
      }
    });
    std::vector<double> sum(4, 0.0);
    std::size_t used = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!scores[i]) {
        Warn(err, "[" + variant + "] " + problems[i] + " (excluded)");
        continue;
      }
      const RougeScores& s = *scores[i];
      const double vals[4] = {s.r1, s.r2, s.rsu4, s.r_avg};
      for (int k = 0; k < 4; ++k) sum[k] += vals[k];
      ++used;
      if (a.common.jsonl()) {
        out << EvalRecord("rouge", docs[i].first, variant, chars[i],
                          {{"R-1", s.r1}, {"R-2", s.r2}, {"R-SU4", s.rsu4}, {"R-AVG", s.r_avg}})
                   .dump()
            << '\n';
      } else {
        out << variant << '\t' << docs[i].first << '\t' << Fixed(s.r1, 4) << '\t' << Fixed(s.r2, 4) << '\t'
            << Fixed(s.rsu4, 4) << '\t' << Fixed(s.r_avg, 4) << '\n';
      }
    }
    if (used == 0) {
      table.push_back({});
      continue;
    }
    for (double& x : sum) x /= static_cast<double>(used);
    table.push_back(sum);
  }

  std::ostringstream tsv;
  tsv << "variant\tR-1\tR-2\tR-SU4\tR-AVG\n";
  bool any = false;
  for (std::size_t v = 0; v < order.size(); ++v) {
    if (table[v].empty()) continue;
    any = true;
    tsv << order[v];
    for (double x : table[v]) tsv << '\t' << Fixed(100.0 * x, 2);
    tsv << '\n';
  }
  if (!a.common.jsonl()) out << "# corpus means (%)\n" << tsv.str();
  if (!a.table_out.empty()) write_file(a.table_out, tsv.str());
  if (!any) {
    err << "error: no summary could be scored\n";
    return kExitRuntime;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- wesm

struct WesmArgs {
  Common common;
  std::string summaries;
  std::string originals;
  std::vector<std::string> variants;
  std::string embeddings;
  std::string embeddings_format = "auto";
  std::string table_out;
};

int RunWesm(const WesmArgs& a, std::ostream& out, std::ostream& err) {
  std::string emb_path = a.embeddings;
  if (emb_path.empty()) {
    if (const char* env = std::getenv(kEmbeddingsEnv)) emb_path = env;
  }
  if (emb_path.empty()) throw UsageError(std::string("--embeddings is required (or set ") + kEmbeddingsEnv + ")");

  const Stoplist stoplist = a.common.stoplist();
  std::map<std::string, fs::path> originals;
  for (const auto& f : list_files(a.originals)) originals[file_stem(f)] = f;
  const SummaryIndex index = IndexSummaries(a.summaries, OrDefaultVariants(a.variants), "summary");
  const auto order = VariantOrder(index, OrDefaultVariants(a.variants));

  // Only vectors for words that occur somewhere in the inputs are kept.
  std::unordered_set<std::string> vocab;
  std::map<std::string, Document> docs;
  for (const auto& [stem, path] : originals) {
    try {
      Document d = load_document(read_file(path), stoplist);
      for (std::size_t p = 0; p < d.paragraphs().size(); ++p) {
        for (auto& w : paragraph_words(d, p)) vocab.insert(std::move(w));
      }
      docs.emplace(stem, std::move(d));
    } catch (const Error& e) {
      Warn(err, path.string() + ": " + e.what() + " (excluded)");
    }
  }
  std::map<fs::path, std::string> summary_text;
  for (const auto& [variant, files] : index) {
    for (const auto& [stem, path] : files) {
      summary_text[path] = read_file(path);
      for (auto& w : word_tokens(summary_text[path])) vocab.insert(std::move(w));
    }
  }
  const EmbeddingFormat format = a.embeddings_format == "text"     ? EmbeddingFormat::kText
                                 : a.embeddings_format == "binary" ? EmbeddingFormat::kBinary
                                                                   : EmbeddingFormat::kAuto;
  const EmbeddingStore store = load_embeddings(emb_path, format, vocab);

  std::ostringstream tsv;
  tsv << "variant\tWESM\n";
  bool any = false;
  for (const auto& variant : order) {
    auto it = index.find(variant);
    if (it == index.end()) {
      Warn(err, "no summaries for variant " + variant);
      continue;
    }
    std::vector<std::pair<std::string, fs::path>> files(it->second.begin(), it->second.end());
    std::vector<std::optional<double>> values(files.size());
    std::vector<std::string> problems(files.size());
    parallel_for(files.size(), a.common.jobs, [&](std::size_t i) {
      const auto d = docs.find(files[i].first);
      if (d == docs.end()) {
        problems[i] = "no original for " + files[i].first;
        return;
      }
      try {
        values[i] = wesm(summary_text.at(files[i].second), d->second, stoplist, store).value;
      } catch (const Error& e) {
        problems[i] = files[i].first + ": " + ToString(e.code()) + ": " + e.what();
      }
    });
    double sum = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (!values[i]) {
        Warn(err, "[" + variant + "] " + problems[i] + " (excluded)");
        continue;
      }
      sum += *values[i];
      ++used;
      const std::size_t chars = CharCount(summary_text.at(files[i].second));
      if (a.common.jsonl()) {
        out << EvalRecord("wesm", files[i].first, variant, chars, {{"WESM", *values[i]}}).dump() << '\n';
      } else {
        out << variant << '\t' << files[i].first << '\t' << Fixed(*values[i], 6) << '\n';
      }
    }
    if (used == 0) continue;
    any = true;
    tsv << variant << '\t' << Fixed(sum / static_cast<double>(used), 6) << '\n';
  }
  if (!a.common.jsonl()) out << "# corpus means\n" << tsv.str();
  if (!a.table_out.empty()) write_file(a.table_out, tsv.str());
  if (!any) {
    err << "error: no summary could be scored\n";
    return kExitRuntime;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  Common common;
  std::string corpus;
  std::vector<std::string> variants;
  std::size_t min_words = 500;
  std::size_t max_words = 10000;
  std::size_t step = 500;
  std::size_t samples = 5;
  std::size_t repeats = 3;
  LengthFlags length;
  std::string plot_dir;
  std::string embeddings;
  std::string embeddings_format = "auto";
  bool strict = false;
};

int RunBench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.step == 0 || a.min_words == 0 || a.min_words > a.max_words) {
    throw UsageError("sizes must satisfy 0 < --min-words <= --max-words and --step > 0");
  }
  const Stoplist stoplist = a.common.stoplist();
  BenchConfig config;
  for (std::size_t w = a.min_words; w <= a.max_words; w += a.step) config.sizes.push_back(w);
  config.samples = a.samples;
  config.repeats = a.repeats;
  config.variants = OrDefaultVariants(a.variants);
  config.seed = a.common.seed;
  config.length = a.length.spec();
  config.options = a.common.options();

  std::optional<double> emb_seconds;
  std::string emb_path = a.embeddings;
  if (emb_path.empty()) {
    if (const char* env = std::getenv(kEmbeddingsEnv)) emb_path = env;
  }
  if (!emb_path.empty()) {
    const auto t0 = std::chrono::steady_clock::now();
    const EmbeddingFormat format = a.embeddings_format == "text"     ? EmbeddingFormat::kText
                                   : a.embeddings_format == "binary" ? EmbeddingFormat::kBinary
                                                                     : EmbeddingFormat::kAuto;
    const auto store = load_embeddings(emb_path, format);
    emb_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    (void)store;
  }

  BenchReport report = run_bench(load_corpus(a.corpus), config, stoplist);
  report.embedding_load_seconds = emb_seconds;

  if (a.common.jsonl()) {
    for (const auto& v : report.variants) {
      for (const auto& b : v.buckets) {
        json rec{{"command", "bench"},   {"variant", v.variant}, {"words", b.target_words},
                 {"mean_words", b.mean_words}, {"mean", b.mean},  {"median", b.median},
                 {"p95", b.p95},         {"exempt", v.exempt},   {"pass", b.pass}};
        rec["threshold"] = b.threshold ? json(*b.threshold) : json(nullptr);
        out << rec.dump() << '\n';
      }
    }
    json meta{{"command", "bench"}, {"machine", report.machine_note}, {"pass", report.all_pass()}};
    meta["embedding_load_seconds"] = emb_seconds ? json(*emb_seconds) : json(nullptr);
    out << meta.dump() << '\n';
  } else {
    out << "# machine: " << report.machine_note << '\n';
    out << "# embedding load: " << (emb_seconds ? Fixed(*emb_seconds, 3) + " s" : std::string("not measured"))
        << '\n';
    out << "variant\twords\tactual\tmean_s\tmedian_s\tp95_s\tlimit_s\tresult\n";
    for (const auto& v : report.variants) {
      for (const auto& b : v.buckets) {
        out << v.variant << '\t' << b.target_words << '\t' << Fixed(b.mean_words, 0) << '\t' << Fixed(b.mean, 5)
            << '\t' << Fixed(b.median, 5) << '\t' << Fixed(b.p95, 5) << '\t'
            << (b.threshold ? Fixed(*b.threshold, 2) : std::string("-")) << '\t'
            << (v.exempt ? "exempt" : b.pass ? "PASS" : "FAIL") << '\n';
      }
    }
    out << "# overall: " << (report.all_pass() ? "PASS" : "FAIL") << '\n';
  }
  if (!a.plot_dir.empty()) {
    for (const auto& v : report.variants) write_file(fs::path(a.plot_dir) / (v.variant + ".dat"), plot_data(v));
  }
  if (!report.all_pass()) {
    Warn(err, "some buckets exceeded their runtime limit");
    if (a.strict) return kExitRuntime;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  Common common;
  std::vector<std::string> tables;
  std::vector<std::string> scores;
  bool lower_better = false;
};

struct ScoreColumn {
  std::string label;
  std::vector<std::string> variants;  // may be empty for bare score lists
  std::vector<double> values;
};

double ParseNumber(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kMalformedLine, "not a number '" + s + "' in " + where);
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, sep);) {
    while (!p.empty() && (p.back() == '\r' || p.back() == ' ')) p.pop_back();
    while (!p.empty() && p.front() == ' ') p.erase(p.begin());
    parts.push_back(p);
  }
  return parts;
}

// "path" or "path:column". A header row "variant\t..." names the columns;
// the last column is used by default.
ScoreColumn ReadTable(const std::string& spec) {
  std::string path = spec;
  std::string column;
  if (const auto colon = spec.rfind(':'); colon != std::string::npos && !fs::exists(spec)) {
    path = spec.substr(0, colon);
    column = spec.substr(colon + 1);
  }
  ScoreColumn col{spec, {}, {}};
  std::stringstream in(read_file(path));
  std::optional<std::size_t> which;
  bool header_seen = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = Split(line, '\t');
    if (!header_seen && cells.size() >= 2 && cells[0] == "variant") {
      header_seen = true;
      if (!column.empty()) {
        auto it = std::find(cells.begin(), cells.end(), column);
        if (it == cells.end()) throw UsageError("column '" + column + "' not found in " + path);
        which = static_cast<std::size_t>(it - cells.begin());
      }
      continue;
    }
    if (cells.size() < 2) throw Error(ErrorCode::kMalformedLine, "expected 'variant<TAB>score' in " + path);
    const std::size_t k = which.value_or(cells.size() - 1);
    if (k >= cells.size()) throw Error(ErrorCode::kMalformedLine, "short row in " + path);
    col.variants.push_back(cells[0]);
    col.values.push_back(ParseNumber(cells[k], path));
  }
  if (!column.empty() && !which) throw UsageError("no header row to select column '" + column + "' in " + path);
  return col;
}

std::string Join(const std::vector<std::size_t>& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

int RunCompare(const CompareArgs& a, std::ostream& out, std::ostream&) {
  std::vector<ScoreColumn> cols;
  for (const auto& t : a.tables) cols.push_back(ReadTable(t));
  for (const auto& s : a.scores) {
    ScoreColumn c{s, {}, {}};
    for (const auto& cell : Split(s, ',')) c.values.push_back(ParseNumber(cell, "--scores"));
    cols.push_back(std::move(c));
  }
  if (cols.size() < 2) throw UsageError("compare needs at least two score columns");
  // Align named columns on the first one's variant order.
  const ScoreColumn* named = nullptr;
  for (const auto& c : cols) {
    if (!c.variants.empty()) {
      named = &c;
      break;
    }
  }
  if (named) {
    for (auto& c : cols) {
      if (c.variants.empty() || c.variants == named->variants) continue;
      std::vector<double> aligned;
      for (const auto& v : named->variants) {
        auto it = std::find(c.variants.begin(), c.variants.end(), v);
        if (it == c.variants.end()) throw Error(ErrorCode::kLengthMismatch, "variant " + v + " missing from " + c.label);
        aligned.push_back(c.values[static_cast<std::size_t>(it - c.variants.begin())]);
      }
      c.variants = named->variants;
      c.values = std::move(aligned);
    }
  }
  const auto dir = a.lower_better ? ScoreDirection::kLowerBetter : ScoreDirection::kHigherBetter;
  std::vector<Ordering> orders;
  for (const auto& c : cols) orders.push_back(scores_to_ordering(c.values, dir));
  const std::size_t k = orders.front().k();
  for (const auto& o : orders) {
    if (o.k() != k) throw Error(ErrorCode::kLengthMismatch, "score columns differ in length");
  }
  if (a.common.jsonl()) {
    json rec{{"command", "compare"}, {"k", k}, {"max_distance", max_permutation_distance(k)}};
    json os = json::array();
    for (std::size_t i = 0; i < cols.size(); ++i) os.push_back({{"label", cols[i].label}, {"ordering", orders[i].ranks}});
    rec["orderings"] = os;
    if (named) rec["variants"] = named->variants;
    json d = json::array();
    for (std::size_t i = 0; i < orders.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < orders.size(); ++j) row.push_back(normalized_l1(orders[i], orders[j]));
      d.push_back(row);
    }
    rec["distances"] = d;
    out << rec.dump() << '\n';
    return kExitOk;
  }
  if (named) {
    out << "# variants:";
    for (const auto& v : named->variants) out << ' ' << v;
    out << '\n';
  }
  out << "# D_" << k << " = " << max_permutation_distance(k) << '\n';
  for (std::size_t i = 0; i < cols.size(); ++i) out << "O" << i + 1 << '\t' << Join(orders[i].ranks) << '\t' << cols[i].label << '\n';
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      out << "L1(O" << i + 1 << ",O" << j + 1 << ")\t" << Fixed(normalized_l1(orders[i], orders[j]), 6) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Keyword-based extractive summarization toolkit", "kwsum"};
  app.require_subcommand(1);

  SummarizeArgs sa;
  auto* summarize_cmd = app.add_subcommand("summarize", "Summarize documents");
  AddCommon(summarize_cmd, sa.common, true);
  summarize_cmd->add_option("--variant,-v", sa.variants, "Variant name(s), default ET3Rank")->check(kVariantName);
  sa.length.add(summarize_cmd);
  summarize_cmd->add_option("--output-dir,-o", sa.output_dir, "Write <stem>.<variant>.txt files here");
  summarize_cmd->add_option("inputs", sa.inputs, "Files or directories")->required();

  KeywordsArgs ka;
  auto* keywords_cmd = app.add_subcommand("keywords", "Score keywords of documents");
  AddCommon(keywords_cmd, ka.common, false);
  keywords_cmd->add_option("--extractor", ka.extractor)->check(CLI::IsMember({"textrank", "rake"}));
  keywords_cmd->add_option("--top", ka.top, "Show only the N best keywords");
  keywords_cmd->add_option("inputs", ka.inputs)->required();

  TopicsArgs ta;
  auto* topics_cmd = app.add_subcommand("topics", "Assign sentences to topics");
  AddCommon(topics_cmd, ta.common, false);
  topics_cmd->add_option("--scheme", ta.scheme)->check(CLI::IsMember({"TCS", "TCP", "TCTT", "TCLDA"}));
  topics_cmd->add_option("--topics", ta.topics, "Number of LDA topics")->check(CLI::PositiveNumber);
  topics_cmd->add_option("inputs", ta.inputs)->required();

  RougeArgs ra;
  auto* rouge_cmd = app.add_subcommand("rouge", "ROUGE-1/2/SU4 recall against references");
  AddCommon(rouge_cmd, ra.common, true);
  rouge_cmd->add_option("--summaries", ra.summaries, "Directory of <stem>.<variant>.txt files")->required();
  rouge_cmd->add_option("--references", ra.references, "Directory of <stem>.*.txt references")->required();
  rouge_cmd->add_option("--variant,-v", ra.variants)->check(kVariantName);
  rouge_cmd->add_option("--truncate", ra.truncate, "Cut candidates to N words first");
  rouge_cmd->add_option("--table-out", ra.table_out, "Write the corpus-mean table (TSV)");

  WesmArgs wa;
  auto* wesm_cmd = app.add_subcommand("wesm", "Word-embedding similarity of summaries to originals");
  AddCommon(wesm_cmd, wa.common, true);
  wesm_cmd->add_option("--summaries", wa.summaries)->required();
  wesm_cmd->add_option("--originals", wa.originals)->required();
  wesm_cmd->add_option("--variant,-v", wa.variants)->check(kVariantName);
  wesm_cmd->add_option("--embeddings", wa.embeddings, std::string("Vector file (default $") + kEmbeddingsEnv + ")");
  wesm_cmd->add_option("--embeddings-format", wa.embeddings_format)->check(CLI::IsMember({"auto", "text", "binary"}));
  wesm_cmd->add_option("--table-out", wa.table_out);

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Time summarization on synthetic documents");
  AddCommon(bench_cmd, ba.common, false);
  bench_cmd->add_option("--corpus", ba.corpus, "Directory of plain-text articles")->required();
  bench_cmd->add_option("--variant,-v", ba.variants)->check(kVariantName);
  bench_cmd->add_option("--min-words", ba.min_words);
  bench_cmd->add_option("--max-words", ba.max_words);
  bench_cmd->add_option("--step", ba.step);
  bench_cmd->add_option("--samples", ba.samples, "Synthetic documents per size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeats", ba.repeats, "Timed runs per document, fastest kept")->check(CLI::PositiveNumber);
  ba.length.add(bench_cmd);
  bench_cmd->add_option("--plot-dir", ba.plot_dir, "Write <variant>.dat plot files");
  bench_cmd->add_option("--embeddings", ba.embeddings, "Also time loading this vector file");
  bench_cmd->add_option("--embeddings-format", ba.embeddings_format)->check(CLI::IsMember({"auto", "text", "binary"}));
  bench_cmd->add_flag("--strict", ba.strict, "Exit 1 when a bucket misses its limit");

  CompareArgs ca;
  auto* compare_cmd = app.add_subcommand("compare", "Orderings and normalized L1 distances between score columns");
  AddCommon(compare_cmd, ca.common, false);
  compare_cmd->add_option("--table", ca.tables, "TSV file, optionally path:column");
  compare_cmd->add_option("--scores", ca.scores, "Comma-separated scores");
  compare_cmd->add_flag("--lower-better", ca.lower_better);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(summarize_cmd)) return RunSummarize(sa, out, err);
    if (app.got_subcommand(keywords_cmd)) return RunKeywords(ka, out, err);
    if (app.got_subcommand(topics_cmd)) return RunTopics(ta, out, err);
    if (app.got_subcommand(rouge_cmd)) return RunRouge(ra, out, err);
    if (app.got_subcommand(wesm_cmd)) return RunWesm(wa, out, err);
    if (app.got_subcommand(bench_cmd)) return RunBench(ba, out, err);
    if (app.got_subcommand(compare_cmd)) return RunCompare(ca, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << ToString(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace kwsum::cli
