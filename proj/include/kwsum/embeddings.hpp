#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kwsum {

// Word vectors stored as 32-bit floats in one contiguous table.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t vocab_size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  // Lowercases `word`. Returns false (and keeps the existing vector) if the
  // word is already present. Throws Error(kDimensionMismatch) on wrong length
  // and Error(kInvalidArgument) on non-finite components.
  bool add(std::string_view word, std::span<const float> vector);

  // Case-folded exact match.
  std::optional<std::span<const float>> lookup(std::string_view word) const;
  // `word` must already be lowercase.
  std::optional<std::span<const float>> lookup_normalized(const std::string& word) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Keeps only these (lowercase) words when set.
using VocabularyFilter = std::optional<std::unordered_set<std::string>>;

// Text format: optional "vocab_size dim" header, then "word v1 ... vdim" per
// line. Errors: kEmptyFile, kMalformedLine, kDimensionMismatch (with line).
EmbeddingStore parse_text_embeddings(std::string_view content, const VocabularyFilter& filter = {});
EmbeddingStore load_text_embeddings(const std::filesystem::path& path,
                                    const VocabularyFilter& filter = {});

// Binary format: ASCII "vocab_size dim\n" header, then per entry the word, a
// space, dim little-endian float32 values and an optional newline.
// Errors: kMalformedHeader, kTruncatedFile.
EmbeddingStore parse_binary_embeddings(std::string_view content,
                                       const VocabularyFilter& filter = {});
EmbeddingStore load_binary_embeddings(const std::filesystem::path& path,
                                      const VocabularyFilter& filter = {});

enum class EmbeddingFormat { kAuto, kText, kBinary };

// kAuto picks binary for ".bin" and text otherwise.
EmbeddingStore load_embeddings(const std::filesystem::path& path,
                               EmbeddingFormat format = EmbeddingFormat::kAuto,
                               const VocabularyFilter& filter = {});

std::string write_text_embeddings(const EmbeddingStore& store);
std::string write_binary_embeddings(const EmbeddingStore& store);

}  // namespace kwsum
