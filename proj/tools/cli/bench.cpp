#include "cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "cli/files.hpp"
#include "kwsum/error.hpp"

namespace kwsum::cli {

std::vector<Article> load_corpus(const std::filesystem::path& dir) {
  std::vector<Article> corpus;
  for (const auto& path : list_files(dir)) {
    Article a{path.filename().string(), read_file(path), 0};
    a.words = whitespace_word_count(a.text);
    if (a.words > 0) corpus.push_back(std::move(a));
  }
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no articles with text in " + dir.string());
  return corpus;
}

namespace {

std::string Trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string build_synthetic_document(const std::vector<Article>& corpus, std::size_t target_words,
                                     std::mt19937_64& rng, const Stoplist& stoplist) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty corpus");
  std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
  std::string out;
  std::size_t total = 0;
  while (total < target_words) {
    const Article& a = corpus[pick(rng)];
    std::string piece = Trimmed(a.text);
    std::size_t words = whitespace_word_count(piece);
    if (total + words > target_words) {
      const Document doc = load_document(piece, stoplist);
      const std::size_t want = target_words - total;
      std::size_t best_end = 0;
      std::size_t best_words = 0;
      for (const auto& s : doc.sentences()) {
        const std::size_t w = whitespace_word_count(std::string_view(piece).substr(0, s.bytes.end));
        const auto dist = [want](std::size_t x) { return x > want ? x - want : want - x; };
        if (dist(w) < dist(best_words)) {
          best_end = s.bytes.end;
          best_words = w;
        }
        if (w >= want) break;
      }
      piece.resize(best_end);
      words = best_words;
      if (words == 0) break;
      target_words = total + words;  // this article closes the document
    }
    if (!out.empty()) out += "\n\n";
    out += piece;
    total += words;
  }
  out += '\n';
  return out;
}

std::vector<std::size_t> default_bench_sizes() {
  std::vector<std::size_t> sizes;
  for (std::size_t w = 500; w <= 10000; w += 500) sizes.push_back(w);
  return sizes;
}

std::optional<double> runtime_threshold(std::size_t words) {
  if (words <= 3000) return 0.5;
  if (words <= 5500) return 1.0;
  if (words <= 10000) return 3.0;
  return std::nullopt;
}

bool exempt_from_threshold(const Variant& variant) { return variant.scheme == TopicScheme::kTCLDA; }

bool BenchReport::all_pass() const {
  for (const auto& v : variants) {
    for (const auto& b : v.buckets) {
      if (!b.pass) return false;
    }
  }
  return true;
}

namespace {

double Quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  // nearest-rank
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size())));
  return xs[std::clamp<std::size_t>(rank, 1, xs.size()) - 1];
}

double Median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

BenchReport run_bench(const std::vector<Article>& corpus, const BenchConfig& config,
                      const Stoplist& stoplist) {
  if (config.samples == 0) throw Error(ErrorCode::kInvalidArgument, "samples must be positive");
  std::vector<Variant> variants;
  for (const auto& name : config.variants) variants.push_back(parse_variant(name));

  // documents[bucket][sample]
  std::vector<std::vector<std::string>> documents;
  std::mt19937_64 rng(config.seed);
  for (std::size_t size : config.sizes) {
    documents.emplace_back();
    for (std::size_t s = 0; s < config.samples; ++s) {
      documents.back().push_back(build_synthetic_document(corpus, size, rng, stoplist));
    }
  }

  BenchReport report;
  report.machine_note = machine_note();
  using Clock = std::chrono::steady_clock;
  for (const Variant& v : variants) {
    VariantTimings vt{std::string(v.name), exempt_from_threshold(v), {}};
    const SummarySpec spec{v, config.length};
    if (!documents.empty()) {
      // untimed warm-up
      (void)summarize(load_document(documents.front().front(), stoplist), spec, stoplist, config.options);
    }
    for (std::size_t b = 0; b < config.sizes.size(); ++b) {
      std::vector<double> secs;
      double words = 0;
      for (const auto& text : documents[b]) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < std::max<std::size_t>(config.repeats, 1); ++r) {
          const auto t0 = Clock::now();
          const Document doc = load_document(text, stoplist);
          const Summary summary = summarize(doc, spec, stoplist, config.options);
          const auto t1 = Clock::now();
          (void)summary;
          best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        secs.push_back(std::max(best, 1e-9));
        words += static_cast<double>(whitespace_word_count(text));
      }
      BucketTiming bt;
      bt.target_words = config.sizes[b];
      bt.mean_words = words / static_cast<double>(secs.size());
      double sum = 0;
      for (double x : secs) sum += x;
      bt.mean = sum / static_cast<double>(secs.size());
      bt.median = Median(secs);
      bt.p95 = Quantile(secs, 0.95);
      bt.threshold = runtime_threshold(bt.target_words);
      bt.pass = vt.exempt || !bt.threshold || bt.p95 < *bt.threshold;
      vt.buckets.push_back(bt);
    }
    report.variants.push_back(std::move(vt));
  }
  return report;
}

std::string machine_note() {
  std::string cpu = "unknown cpu";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = Trimmed(line.substr(colon + 1));
      break;
    }
  }
  std::ostringstream os;
  os << cpu << "; " << std::thread::hardware_concurrency() << " hardware threads; timings single-threaded; ";
#if defined(__clang__)
  os << "clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
  os << "gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#else
  os << "unknown compiler";
#endif
#ifdef NDEBUG
  os << ", optimized build";
#else
  os << ", debug build";
#endif
  return os.str();
}

std::string plot_data(const VariantTimings& timings) {
  std::ostringstream os;
  os.precision(6);
  for (const auto& b : timings.buckets) {
    os << static_cast<double>(b.target_words) / 100.0 << ' ' << b.mean << '\n';
  }
  return os.str();
}

}  // namespace kwsum::cli
