#include "kwsum/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kwsum/error.hpp"
#include "kwsum/unicode.hpp"

namespace kwsum {

using unicode::Decoded;

namespace {

bool IsApostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

bool IsTerminal(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

bool IsCloser(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' || cp == U'”' ||
         cp == U'’' || cp == U'»';
}

bool IsOpener(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U'(' || cp == U'[' || cp == U'“' ||
         cp == U'‘' || cp == U'«';
}

Span ByteSpan(const Decoded& d, std::size_t b, std::size_t e) {
  return Span{d.offsets[b], d.offsets[e]};
}

std::string Slice(std::string_view raw, const Decoded& d, std::size_t b, std::size_t e) {
  return std::string(raw.substr(d.offsets[b], d.offsets[e] - d.offsets[b]));
}

std::string LowerSlice(const Decoded& d, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) unicode::AppendUtf8(out, unicode::ToLower(d.chars[i]));
  return out;
}

// Tokens in code points [b, e). Offsets are absolute within `d`.
std::vector<Token> TokenizeRange(std::string_view raw, const Decoded& d, std::size_t b,
                                 std::size_t e) {
  std::vector<Token> tokens;
  std::size_t i = b;
  while (i < e) {
    const char32_t cp = d.chars[i];
    if (unicode::IsSpace(cp)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    bool word = unicode::IsAlnum(cp);
    if (word) {
      while (j < e) {
        if (unicode::IsAlnum(d.chars[j])) {
          ++j;
        } else if (IsApostrophe(d.chars[j]) && j + 1 < e && unicode::IsAlnum(d.chars[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
    }
    Token t;
    t.surface = Slice(raw, d, i, j);
    t.normalized = LowerSlice(d, i, j);
    t.chars = Span{i, j};
    t.bytes = ByteSpan(d, i, j);
    t.is_word = word;
    tokens.push_back(std::move(t));
    i = j;
  }
  return tokens;
}

bool IsBlankLine(const Decoded& d, std::size_t b, std::size_t e) {
  for (std::size_t i = b; i < e; ++i) {
    if (!unicode::IsSpace(d.chars[i])) return false;
  }
  return true;
}

// True if the '.' at `dot` ends an abbreviation or an initial.
bool GuardedAbbreviation(const Decoded& d, std::size_t para_begin, std::size_t dot,
                         const std::unordered_set<std::string>& abbreviations) {
  std::size_t start = dot;
  while (start > para_begin && !unicode::IsSpace(d.chars[start - 1])) --start;
  while (start < dot && IsOpener(d.chars[start])) ++start;
  if (start == dot) return false;
  std::string chunk = LowerSlice(d, start, dot);
  if (dot - start == 1 && unicode::IsAlpha(d.chars[start])) return true;
  return abbreviations.count(chunk) > 0;
}

// Sentence ranges (code points, trimmed) inside the paragraph [b, e).
std::vector<Span> SplitSentences(const Decoded& d, std::size_t b, std::size_t e) {
  const auto& abbreviations = default_abbreviations();
  std::vector<Span> out;
  std::size_t start = b;
  for (std::size_t i = b; i < e; ++i) {
    if (!IsTerminal(d.chars[i])) continue;
    std::size_t j = i + 1;
    while (j < e && (IsTerminal(d.chars[j]) || IsCloser(d.chars[j]))) ++j;
    if (j >= e || !unicode::IsSpace(d.chars[j])) continue;
    std::size_t k = j;
    while (k < e && unicode::IsSpace(d.chars[k])) ++k;
    if (k >= e) continue;
    std::size_t first = k;
    while (first < e && IsOpener(d.chars[first])) ++first;
    if (first >= e || !(unicode::IsUpper(d.chars[first]) || unicode::IsDigit(d.chars[first]))) {
      continue;
    }
    if (d.chars[i] == U'.' && j == i + 1 && GuardedAbbreviation(d, b, i, abbreviations)) continue;
    out.push_back(Span{start, j});
    start = k;
    i = k - 1;
  }
  std::size_t end = e;
  while (end > start && unicode::IsSpace(d.chars[end - 1])) --end;
  if (end > start) out.push_back(Span{start, end});
  return out;
}

std::unordered_set<std::string> ParseWordList(std::string_view text) {
  std::unordered_set<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    line.erase(0, lead);
    if (line.empty() || line.front() == '#') continue;
    words.insert(unicode::Lowercase(line));
  }
  return words;
}

}  // namespace

Stoplist::Stoplist(std::unordered_set<std::string> words, std::string source_name)
    : source_name_(std::move(source_name)) {
  for (const auto& w : words) words_.insert(unicode::Lowercase(w));
}

Stoplist Stoplist::Parse(std::string_view text, std::string source_name) {
  if (!unicode::IsValidUtf8(text)) {
    throw Error(ErrorCode::kInvalidEncoding, "stoplist " + source_name + " is not valid UTF-8");
  }
  Stoplist s;
  s.words_ = ParseWordList(text);
  s.source_name_ = std::move(source_name);
  return s;
}

Stoplist Stoplist::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open stoplist " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path.string());
}

const Stoplist& Stoplist::Default() {
  static const Stoplist list = Parse(bundled::kEnglishStopwords, "bundled:english");
  return list;
}

bool Stoplist::contains(std::string_view word) const {
  return words_.count(unicode::Lowercase(word)) > 0;
}

const std::unordered_set<std::string>& default_abbreviations() {
  static const std::unordered_set<std::string> list = ParseWordList(bundled::kEnglishAbbreviations);
  return list;
}

std::size_t Document::word_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences_) {
    n += static_cast<std::size_t>(
        std::count_if(s.tokens.begin(), s.tokens.end(), [](const Token& t) { return t.is_word; }));
  }
  return n;
}

std::size_t Document::content_token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences_) n += s.content_tokens.size();
  return n;
}

std::vector<Token> content_tokens(const Sentence& sentence, const Stoplist& stoplist) {
  std::vector<Token> out;
  for (const auto& t : sentence.tokens) {
    if (t.is_word && !stoplist.contains_normalized(t.normalized)) out.push_back(t);
  }
  return out;
}

Document load_document(std::string text, const Stoplist& stoplist) {
  const Decoded d = unicode::Decode(text);
  Document doc;
  doc.char_count_ = d.chars.size();

  // Paragraphs are maximal runs of non-blank lines.
  const std::size_t n = d.chars.size();
  std::size_t line_begin = 0;
  std::size_t para_begin = 0;
  bool in_para = false;
  auto close_paragraph = [&](std::size_t end) {
    std::size_t b = para_begin;
    std::size_t e = end;
    while (b < e && unicode::IsSpace(d.chars[b])) ++b;
    while (e > b && unicode::IsSpace(d.chars[e - 1])) --e;
    Paragraph p;
    p.index = doc.paragraphs_.size();
    p.chars = Span{b, e};
    p.bytes = ByteSpan(d, b, e);
    p.first_sentence = doc.sentences_.size();
    for (const Span& s : SplitSentences(d, b, e)) {
      Sentence sent;
      sent.index = doc.sentences_.size();
      sent.paragraph_index = p.index;
      sent.chars = s;
      sent.bytes = ByteSpan(d, s.begin, s.end);
      sent.tokens = TokenizeRange(text, d, s.begin, s.end);
      sent.content_tokens = content_tokens(sent, stoplist);
      doc.sentences_.push_back(std::move(sent));
    }
    p.sentence_count = doc.sentences_.size() - p.first_sentence;
    doc.paragraphs_.push_back(p);
  };
  while (line_begin < n) {
    std::size_t line_end = line_begin;
    while (line_end < n && d.chars[line_end] != U'\n') ++line_end;
    const bool blank = IsBlankLine(d, line_begin, line_end);
    if (blank && in_para) {
      close_paragraph(line_begin);
      in_para = false;
    } else if (!blank && !in_para) {
      para_begin = line_begin;
      in_para = true;
    }
    line_begin = line_end + 1;
  }
  if (in_para) close_paragraph(n);

  doc.raw_text_ = std::move(text);
  return doc;
}

std::vector<Token> tokenize(std::string_view text) {
  const Decoded d = unicode::Decode(text);
  return TokenizeRange(text, d, 0, d.chars.size());
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) {
    if (t.is_word) out.push_back(std::move(t.normalized));
  }
  return out;
}

std::size_t whitespace_word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char32_t cp : unicode::Decode(text).chars) {
    const bool space = unicode::IsSpace(cp);
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

}  // namespace kwsum
