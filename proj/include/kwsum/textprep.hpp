#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace kwsum {

// Half-open range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string surface;
  std::string normalized;  // lowercased surface
  Span chars;              // Unicode scalar offsets into the raw text
  Span bytes;              // UTF-8 byte offsets into the raw text
  bool is_word = false;    // contains at least one letter or digit

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::size_t index = 0;
  std::size_t paragraph_index = 0;
  Span chars;
  Span bytes;
  std::vector<Token> tokens;
  std::vector<Token> content_tokens;  // stopwords and punctuation removed

  std::size_t char_length() const { return chars.size(); }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Paragraph {
  std::size_t index = 0;
  Span chars;
  Span bytes;
  std::size_t first_sentence = 0;
  std::size_t sentence_count = 0;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

// A set of lowercased words. Lookups fold case, so membership is
// case-insensitive.
class Stoplist {
 public:
  Stoplist() = default;
  Stoplist(std::unordered_set<std::string> words, std::string source_name);

  // One word per line, '#' starts a comment line, trailing whitespace is
  // stripped, blank lines are skipped.
  static Stoplist Parse(std::string_view text, std::string source_name);
  static Stoplist FromFile(const std::filesystem::path& path);
  // The bundled English list.
  static const Stoplist& Default();

  bool contains(std::string_view word) const;
  // `word` must already be lowercase.
  bool contains_normalized(const std::string& word) const { return words_.count(word) > 0; }
  std::size_t size() const { return words_.size(); }
  const std::string& source_name() const { return source_name_; }

 private:
  std::unordered_set<std::string> words_;
  std::string source_name_;
};

class Document {
 public:
  Document() = default;

  const std::string& raw_text() const { return raw_text_; }
  const std::vector<Paragraph>& paragraphs() const { return paragraphs_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  std::size_t char_count() const { return char_count_; }
  bool empty() const { return sentences_.empty(); }

  std::string_view text(const Span& bytes) const {
    return std::string_view(raw_text_).substr(bytes.begin, bytes.size());
  }
  std::string_view sentence_text(std::size_t i) const { return text(sentences_.at(i).bytes); }
  std::string_view paragraph_text(std::size_t i) const { return text(paragraphs_.at(i).bytes); }

  // Number of tokens containing a letter or digit.
  std::size_t word_count() const;
  std::size_t content_token_count() const;

  friend bool operator==(const Document&, const Document&) = default;

 private:
  friend Document load_document(std::string text, const Stoplist& stoplist);

  std::string raw_text_;
  std::vector<Paragraph> paragraphs_;
  std::vector<Sentence> sentences_;
  std::size_t char_count_ = 0;
};

// Throws Error(kInvalidEncoding) when `text` is not valid UTF-8.
Document load_document(std::string text, const Stoplist& stoplist);
inline Document load_document(std::string text) {
  return load_document(std::move(text), Stoplist::Default());
}

// Tokens of `sentence` that contain a letter or digit and whose normalized
// form is not a stopword.
std::vector<Token> content_tokens(const Sentence& sentence, const Stoplist& stoplist);

// Splits text on whitespace and punctuation. Punctuation characters become
// single-character tokens; apostrophes between letters stay inside words.
// Offsets are relative to `text`.
std::vector<Token> tokenize(std::string_view text);

// Lowercased word tokens only (no punctuation), in order.
std::vector<std::string> word_tokens(std::string_view text);

// Whitespace-delimited word count.
std::size_t whitespace_word_count(std::string_view text);

// Abbreviations (lowercase, without the trailing period) that do not end a
// sentence.
const std::unordered_set<std::string>& default_abbreviations();

namespace bundled {
extern const char* const kEnglishStopwords;
extern const char* const kEnglishAbbreviations;
}  // namespace bundled

}  // namespace kwsum
