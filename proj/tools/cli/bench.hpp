#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kwsum/summarizer.hpp"

namespace kwsum::cli {

struct Article {
  std::string name;
  std::string text;
  std::size_t words = 0;
};

// Every regular file in `dir`, read as one article. Throws Error(kEmptyCorpus)
// when no file holds any words.
std::vector<Article> load_corpus(const std::filesystem::path& dir);

// Concatenates randomly chosen articles (blank-line separated) until the
// whitespace word count reaches `target_words`. The last article is cut at a
// sentence boundary, keeping whichever prefix lands closest to the target.
std::string build_synthetic_document(const std::vector<Article>& corpus, std::size_t target_words,
                                     std::mt19937_64& rng, const Stoplist& stoplist);

struct BenchConfig {
  std::vector<std::size_t> sizes;  // target words per bucket, ascending
  std::size_t samples = 5;         // documents per bucket
  std::size_t repeats = 3;         // timed runs per document; the fastest is kept
  std::vector<std::string> variants;
  std::uint64_t seed = 42;
  LengthSpec length = LengthSpec::Percent(30);
  SummarizerOptions options;
};

std::vector<std::size_t> default_bench_sizes();

// Time limit for a document of `words` words, or nullopt above 10000.
std::optional<double> runtime_threshold(std::size_t words);
// LDA variants have no realtime target.
bool exempt_from_threshold(const Variant& variant);

struct BucketTiming {
  std::size_t target_words = 0;
  double mean_words = 0.0;  // actual size of the synthetic documents
  double mean = 0.0;        // seconds
  double median = 0.0;
  double p95 = 0.0;
  std::optional<double> threshold;
  bool pass = true;  // p95 under the threshold, or no threshold applies
};

struct VariantTimings {
  std::string variant;
  bool exempt = false;
  std::vector<BucketTiming> buckets;
};

struct BenchReport {
  std::vector<VariantTimings> variants;
  std::string machine_note;
  std::optional<double> embedding_load_seconds;

  bool all_pass() const;
};

// Builds `samples` documents per size (the same documents for every variant)
// and times load + summarize for each, single-threaded.
BenchReport run_bench(const std::vector<Article>& corpus, const BenchConfig& config,
                      const Stoplist& stoplist);

std::string machine_note();

// "x y" lines, x = words / 100 and y = mean seconds.
std::string plot_data(const VariantTimings& timings);

}  // namespace kwsum::cli
