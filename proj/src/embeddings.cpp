#include "kwsum/embeddings.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "kwsum/error.hpp"
#include "kwsum/unicode.hpp"

namespace kwsum {

bool EmbeddingStore::add(std::string_view word, std::span<const float> vector) {
  if (vector.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector for '" + std::string(word) + "' has " + std::to_string(vector.size()) +
                    " components, expected " + std::to_string(dim_));
  }
  for (float x : vector) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite component for '" + std::string(word) + "'");
    }
  }
  std::string key = unicode::Lowercase(word);
  auto [it, inserted] = index_.emplace(key, words_.size());
  if (!inserted) return false;
  words_.push_back(std::move(key));
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::optional<std::span<const float>> EmbeddingStore::lookup(std::string_view word) const {
  if (!unicode::IsValidUtf8(word)) return std::nullopt;
  return lookup_normalized(unicode::Lowercase(word));
}

std::optional<std::span<const float>> EmbeddingStore::lookup_normalized(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return std::span<const float>(data_).subspan(it->second * dim_, dim_);
}

namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsBlank(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !IsBlank(line[j])) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool ParseFloat(std::string_view s, float& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool ParseSize(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool Keep(const VocabularyFilter& filter, std::string_view word) {
  return !filter || filter->count(unicode::Lowercase(word)) > 0;
}

}  // namespace

EmbeddingStore parse_text_embeddings(std::string_view content, const VocabularyFilter& filter) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    std::string_view line = content.substr(pos, end - pos);
    if (!SplitFields(line).empty()) lines.emplace_back(line_no, line);
    pos = end + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::kEmptyFile, "embedding file is empty");

  std::size_t first = 0;
  std::size_t dim = 0;
  auto head = SplitFields(lines[0].second);
  std::size_t header_vocab = 0;
  std::size_t header_dim = 0;
  if (head.size() == 2 && ParseSize(head[0], header_vocab) && ParseSize(head[1], header_dim)) {
    if (header_dim > content.size()) {
      throw Error(ErrorCode::kMalformedLine, "line " + std::to_string(lines[0].first) +
                                                 ": dimension exceeds file size",
                  lines[0].first);
    }
    dim = header_dim;
    first = 1;
  } else {
    dim = head.size() - 1;
  }
  if (dim == 0) {
    throw Error(ErrorCode::kMalformedLine, "line " + std::to_string(lines[0].first) + ": no vector",
                lines[0].first);
  }

  EmbeddingStore store(dim);
  std::vector<float> vec(dim);
  for (std::size_t li = first; li < lines.size(); ++li) {
    const auto [no, line] = lines[li];
    auto fields = SplitFields(line);
    if (fields.size() < 2) {
      throw Error(ErrorCode::kMalformedLine, "line " + std::to_string(no) + ": missing vector", no);
    }
    if (fields.size() - 1 != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "line " + std::to_string(no) + ": expected " + std::to_string(dim) +
                      " values, found " + std::to_string(fields.size() - 1),
                  no);
    }
    if (!unicode::IsValidUtf8(fields[0])) {
      throw Error(ErrorCode::kMalformedLine, "line " + std::to_string(no) + ": word is not UTF-8", no);
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (!ParseFloat(fields[k + 1], vec[k])) {
        throw Error(ErrorCode::kMalformedLine,
                    "line " + std::to_string(no) + ": bad number '" + std::string(fields[k + 1]) + "'",
                    no);
      }
    }
    if (Keep(filter, fields[0])) store.add(fields[0], vec);
  }
  return store;
}

EmbeddingStore load_text_embeddings(const std::filesystem::path& path, const VocabularyFilter& filter) {
  return parse_text_embeddings(ReadFile(path), filter);
}

EmbeddingStore parse_binary_embeddings(std::string_view content, const VocabularyFilter& filter) {
  const std::size_t nl = content.find('\n');
  if (nl == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedHeader, "binary embeddings: missing header line");
  }
  auto head = SplitFields(content.substr(0, nl));
  std::size_t vocab = 0;
  std::size_t dim = 0;
  if (head.size() != 2 || !ParseSize(head[0], vocab) || !ParseSize(head[1], dim) || dim == 0) {
    throw Error(ErrorCode::kMalformedHeader, "binary embeddings: header must be 'vocab_size dim'");
  }

  if (dim > content.size() / sizeof(float)) {
    throw Error(ErrorCode::kTruncatedFile, "binary embeddings: dimension exceeds file size");
  }
  EmbeddingStore store(dim);
  std::vector<float> vec(dim);
  std::size_t pos = nl + 1;
  const std::size_t vec_bytes = dim * sizeof(float);
  for (std::size_t entry = 0; entry < vocab; ++entry) {
    while (pos < content.size() && (content[pos] == '\n' || content[pos] == '\r')) ++pos;
    const std::size_t sp = content.find(' ', pos);
    if (sp == std::string_view::npos || sp + 1 + vec_bytes > content.size()) {
      throw Error(ErrorCode::kTruncatedFile, "binary embeddings: header promises " +
                                                 std::to_string(vocab) + " words, file ends after " +
                                                 std::to_string(entry));
    }
    std::string_view word = content.substr(pos, sp - pos);
    if (word.empty() || !unicode::IsValidUtf8(word)) {
      throw Error(ErrorCode::kMalformedLine, "binary embeddings: bad word at entry " + std::to_string(entry),
                  entry + 2);
    }
    const char* p = content.data() + sp + 1;
    for (std::size_t k = 0; k < dim; ++k) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, p + k * sizeof(float), sizeof(bits));
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      vec[k] = std::bit_cast<float>(bits);
    }
    pos = sp + 1 + vec_bytes;
    if (Keep(filter, word)) store.add(word, vec);
  }
  return store;
}

EmbeddingStore load_binary_embeddings(const std::filesystem::path& path,
                                      const VocabularyFilter& filter) {
  return parse_binary_embeddings(ReadFile(path), filter);
}

EmbeddingStore load_embeddings(const std::filesystem::path& path, EmbeddingFormat format,
                               const VocabularyFilter& filter) {
  if (format == EmbeddingFormat::kAuto) {
    format = path.extension() == ".bin" ? EmbeddingFormat::kBinary : EmbeddingFormat::kText;
  }
  return format == EmbeddingFormat::kBinary ? load_binary_embeddings(path, filter)
                                            : load_text_embeddings(path, filter);
}

std::string write_text_embeddings(const EmbeddingStore& store) {
  std::string out = std::to_string(store.vocab_size()) + " " + std::to_string(store.dim()) + "\n";
  char buf[64];
  for (const auto& w : store.words()) {
    out += w;
    const std::span<const float> vec = *store.lookup_normalized(w);
    for (float x : vec) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
      out.push_back(' ');
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

std::string write_binary_embeddings(const EmbeddingStore& store) {
  std::string out = std::to_string(store.vocab_size()) + " " + std::to_string(store.dim()) + "\n";
  for (const auto& w : store.words()) {
    out += w;
    out.push_back(' ');
    const std::span<const float> vec = *store.lookup_normalized(w);
    for (float x : vec) {
      auto bits = std::bit_cast<std::uint32_t>(x);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      char bytes[4];
      std::memcpy(bytes, &bits, 4);
      out.append(bytes, 4);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace kwsum
