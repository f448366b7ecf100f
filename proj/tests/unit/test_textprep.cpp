#include <random>
#include <string>

#include "doctest.h"
#include "kwsum/error.hpp"
#include "kwsum/textprep.hpp"
#include "kwsum/unicode.hpp"

using namespace kwsum;

namespace {

std::vector<std::string> Normalized(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.normalized);
  return out;
}

Sentence SentenceOf(std::string_view text) {
  auto doc = load_document(std::string(text), Stoplist{});
  REQUIRE(doc.sentences().size() == 1);
  return doc.sentences()[0];
}

}  // namespace

TEST_CASE("empty input yields an empty document") {
  const auto doc = load_document("");
  CHECK(doc.paragraphs().empty());
  CHECK(doc.sentences().empty());
  CHECK(doc.char_count() == 0);
}

TEST_CASE("whitespace-only input has no paragraphs") {
  const auto doc = load_document("  \n\n \t\n");
  CHECK(doc.paragraphs().empty());
  CHECK(doc.char_count() == 7);
}

TEST_CASE("blank lines separate paragraphs, sentences follow terminal punctuation") {
  const auto doc = load_document("A cat. A dog.\n\nA bird.");
  REQUIRE(doc.paragraphs().size() == 2);
  REQUIRE(doc.sentences().size() == 3);
  CHECK(doc.sentences()[2].paragraph_index == 1);
  CHECK(doc.sentence_text(0) == "A cat.");
  CHECK(doc.sentence_text(1) == "A dog.");
  CHECK(doc.sentence_text(2) == "A bird.");
  CHECK(doc.paragraphs()[0].sentence_count == 2);
}

TEST_CASE("single newlines do not break paragraphs") {
  const auto doc = load_document("First line\ncontinues here.\n  \nNext.");
  CHECK(doc.paragraphs().size() == 2);
  CHECK(doc.paragraph_text(0) == "First line\ncontinues here.");
}

TEST_CASE("abbreviation guard") {
  CHECK(load_document("Dr. Smith arrived.").sentences().size() == 1);
  CHECK(load_document("He met J. Smith today. Then left.").sentences().size() == 2);
  CHECK(load_document("Costs rose in the U.S. Officials said so.").sentences().size() == 1);
  CHECK(load_document("It rained. 42 people left!").sentences().size() == 2);
  CHECK(load_document("Wait... what? \"Yes.\" Fine.").sentences().size() == 3);
  CHECK(load_document("lowercase. after a period").sentences().size() == 1);
}

TEST_CASE("invalid UTF-8 is rejected") {
  try {
    load_document(std::string("bad \xC3\x28 byte"));
    FAIL("expected InvalidEncoding");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidEncoding);
  }
  CHECK_FALSE(unicode::IsValidUtf8("\xED\xA0\x80"));  // surrogate
  CHECK_FALSE(unicode::IsValidUtf8("\xC0\xAF"));      // overlong
}

TEST_CASE("character offsets count scalar values, not bytes") {
  const auto doc = load_document("Café société. Ünïcode wins.");
  CHECK(doc.char_count() == 27);
  REQUIRE(doc.sentences().size() == 2);
  CHECK(doc.sentences()[0].chars == Span{0, 13});
  CHECK(doc.sentences()[1].tokens[0].normalized == "ünïcode");
}

TEST_CASE("tokenization splits punctuation and hyphens, keeps inner apostrophes") {
  const auto tokens = tokenize("100-mile-an-hour winds, Gilbert's path!");
  std::vector<std::string> expect{"100", "-", "mile", "-", "an", "-", "hour", "winds",
                                  ",",   "gilbert's", "path", "!"};
  CHECK(Normalized(tokens) == expect);
  CHECK(tokens[1].is_word == false);
  CHECK(tokens[0].is_word == true);
}

TEST_CASE("content_tokens filters stopwords and punctuation") {
  const Stoplist the({"the"}, "test");
  CHECK(Normalized(content_tokens(SentenceOf("the cat sat"), the)) ==
        std::vector<std::string>{"cat", "sat"});
  CHECK(content_tokens(SentenceOf(", !"), the).empty());
  const Stoplist toward({"toward"}, "test");
  CHECK(Normalized(content_tokens(SentenceOf("Hurricane Gilbert swept toward Jamaica"), toward)) ==
        std::vector<std::string>{"hurricane", "gilbert", "swept", "jamaica"});
}

TEST_CASE("stoplist file format") {
  const auto s = Stoplist::Parse("# comment\nThe  \n\nAnd\t\n#not\n", "inline");
  CHECK(s.size() == 2);
  CHECK(s.contains("the"));
  CHECK(s.contains("AND"));
  CHECK_FALSE(s.contains("#not"));
  CHECK(Stoplist::Default().contains("the"));
  CHECK(Stoplist::Default().size() > 100);
}

TEST_CASE("document invariants hold on random text") {
  std::mt19937 rng(7);
  const std::vector<std::string> pieces{"Alpha", "beta", "Gamma.", "delta,", "Ünï", "x!",
                                        "Dr.",   "U.S.", "\n",     "\n\n",   "  ", "42."};
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const int n = static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      text += pieces[rng() % pieces.size()];
      text += ' ';
    }
    const auto doc = load_document(text);
    const auto again = load_document(doc.raw_text());
    CHECK(doc == again);
    CHECK(doc.char_count() == unicode::Decode(text).chars.size());
    std::size_t last_end = 0;
    for (std::size_t i = 0; i < doc.sentences().size(); ++i) {
      const auto& s = doc.sentences()[i];
      CHECK(s.index == i);
      CHECK(s.chars.begin >= last_end);
      last_end = s.chars.end;
      const auto& p = doc.paragraphs()[s.paragraph_index];
      CHECK(i >= p.first_sentence);
      CHECK(i < p.first_sentence + p.sentence_count);
      for (const auto& t : s.tokens) {
        CHECK(!t.normalized.empty());
        CHECK(t.chars.begin >= s.chars.begin);
        CHECK(t.chars.end <= s.chars.end);
        CHECK(unicode::Lowercase(doc.text(t.bytes)) == t.normalized);
      }
    }
  }
}
