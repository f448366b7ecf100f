#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "kwsum/keywords.hpp"
#include "oracles/power_iteration.hpp"

using namespace kwsum;

namespace {

Document Doc(const std::string& text) { return load_document(text, Stoplist{}); }

}  // namespace

TEST_CASE("word graph counts co-occurrences inside the window") {
  SUBCASE("repeated word gives no self loop") {
    const auto g = build_word_graph(Doc("a b a"), 2);
    CHECK(g.node_count() == 2);
    CHECK(g.weight("a", "b") == 2);
    CHECK(g.weight("a", "a") == 0);
    CHECK(g.edge_count() == 1);
  }
  SUBCASE("single token") {
    const auto g = build_word_graph(Doc("lonely"), 2);
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("path") {
    const auto g = build_word_graph(Doc("x y z"), 2);
    CHECK(g.weight("x", "y") == 1);
    CHECK(g.weight("y", "z") == 1);
    CHECK(g.weight("x", "z") == 0);
  }
  SUBCASE("window 3 reaches two positions ahead") {
    const auto g = build_word_graph(Doc("x y z"), 3);
    CHECK(g.weight("x", "z") == 1);
  }
  SUBCASE("windows stop at sentence boundaries") {
    const auto g = build_word_graph(Doc("Xx yy. Zz ww."), 2);
    CHECK(g.weight("yy", "zz") == 0);
    CHECK(g.weight("zz", "ww") == 1);
  }
  SUBCASE("stopwords are removed before windowing") {
    const auto doc = load_document("storm the coast", Stoplist({"the"}, "t"));
    const auto g = build_word_graph(doc, 2);
    CHECK(g.weight("storm", "coast") == 1);
  }
  SUBCASE("empty document") { CHECK(build_word_graph(Doc(""), 2).node_count() == 0); }
}

TEST_CASE("textrank fixed points") {
  SUBCASE("two nodes converge to 1") {
    const auto s = textrank_scores(build_word_graph(Doc("a b"), 2));
    CHECK(*s.get("a") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*s.get("b") == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("empty graph") { CHECK(textrank_scores(WordGraph{}).empty()); }
  SUBCASE("path graph matches the dense power-iteration oracle") {
    const auto s = textrank_scores(build_word_graph(Doc("x y z"), 2), {0.85, 1e-12, 1000});
    const auto ref = oracle::DensePageRank({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}, 0.85, 1e-10);
    CHECK(*s.get("y") > *s.get("x"));
    CHECK(*s.get("x") == doctest::Approx(*s.get("z")));
    // Frozen from the oracle: x = z = 0.7702702..., y = 1.4594594...
    CHECK(ref[0] == doctest::Approx(0.770270270270).epsilon(1e-9));
    CHECK(ref[1] == doctest::Approx(1.459459459459).epsilon(1e-9));
    CHECK(*s.get("x") == doctest::Approx(ref[0]).epsilon(1e-9));
    CHECK(*s.get("y") == doctest::Approx(ref[1]).epsilon(1e-9));
  }
  SUBCASE("isolated node gets 1 - d") {
    const auto s = textrank_scores(build_word_graph(Doc("Solo.\n\nAa bb."), 2));
    CHECK(*s.get("solo") == doctest::Approx(0.15));
  }
}

TEST_CASE("textrank agrees with the oracle on random weighted graphs") {
  std::mt19937 rng(11);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int trial = 0; trial < 40; ++trial) {
    std::string text;
    for (int s = 0; s < 6; ++s) {
      const int len = 2 + static_cast<int>(rng() % 6);
      for (int i = 0; i < len; ++i) text += vocab[rng() % vocab.size()] + " ";
      text += ". ";
    }
    // Sentences start lowercase, so terminal periods do not split; make each a paragraph.
    std::string paragraphs;
    for (char c : text) paragraphs += (c == '.') ? std::string("\n\n") : std::string(1, c);
    const auto doc = Doc(paragraphs);
    const auto g = build_word_graph(doc, 3);
    const auto s = textrank_scores(g, {0.85, 1e-12, 5000});
    std::vector<std::vector<double>> w(g.node_count(), std::vector<double>(g.node_count(), 0.0));
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      for (std::size_t j = 0; j < g.node_count(); ++j) w[i][j] = g.weight(g.nodes()[i], g.nodes()[j]);
    }
    const auto ref = oracle::DensePageRank(w, 0.85, 1e-12);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      CHECK(*s.get(g.nodes()[i]) == doctest::Approx(ref[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("textrank properties") {
  SUBCASE("connected graph averages to one") {
    const auto g = build_word_graph(Doc("a b c d e a c e b d"), 2);
    const double tol = 1e-6;
    const auto s = textrank_scores(g, {0.85, tol, 100});
    double sum = 0.0;
    for (const auto& [k, v] : s.entries()) sum += v;
    CHECK(std::abs(sum / static_cast<double>(s.size()) - 1.0) < 10 * tol);
  }
  SUBCASE("relabeling preserves the score multiset") {
    const auto s1 = textrank_scores(build_word_graph(Doc("a b c a d"), 2));
    const auto s2 = textrank_scores(build_word_graph(Doc("p q r p s"), 2));
    std::vector<double> v1;
    std::vector<double> v2;
    for (const auto& [k, v] : s1.entries()) v1.push_back(v);
    for (const auto& [k, v] : s2.entries()) v2.push_back(v);
    std::sort(v1.begin(), v1.end());
    std::sort(v2.begin(), v2.end());
    REQUIRE(v1.size() == v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i) CHECK(v1[i] == doctest::Approx(v2[i]).epsilon(1e-12));
  }
}

TEST_CASE("rake scores") {
  SUBCASE("worked example") {
    const auto s = rake_scores({{"deep", "learning"}, {"deep", "parsing"}});
    CHECK(*s.get("deep") == doctest::Approx(2.0));
    CHECK(*s.get("learning") == doctest::Approx(2.0));
    CHECK(*s.get("parsing") == doctest::Approx(2.0));
    CHECK(*s.get("deep learning") == doctest::Approx(4.0));
    CHECK(s.max_phrase_words() == 2);
  }
  SUBCASE("lone word") {
    const auto s = rake_scores({{"alpha"}});
    CHECK(*s.get("alpha") == 1.0);
  }
  SUBCASE("no content tokens") {
    CHECK(rake_scores(load_document("the of and", Stoplist::Default()), Stoplist::Default()).empty());
  }
  SUBCASE("candidates break at stopwords and punctuation") {
    const auto doc = load_document("Deep learning of deep parsing, rules.", Stoplist({"of"}, "t"));
    const auto c = rake_candidates(doc, Stoplist({"of"}, "t"));
    REQUIRE(c.size() == 3);
    CHECK(c[0] == std::vector<std::string>{"deep", "learning"});
    CHECK(c[1] == std::vector<std::string>{"deep", "parsing"});
    CHECK(c[2] == std::vector<std::string>{"rules"});
    const auto s = rake_scores(doc, Stoplist({"of"}, "t"));
    CHECK(*s.get("rules") == 1.0);
  }
  SUBCASE("duplicating a sentence never lowers a frequency") {
    const Stoplist stop({"the", "of", "a"}, "t");
    const std::string base = "The rise of a storm. Storm warnings rise.";
    const auto once = rake_candidates(load_document(base, stop), stop);
    const auto twice = rake_candidates(load_document(base + " The rise of a storm.", stop), stop);
    auto freq = [](const std::vector<std::vector<std::string>>& c, const std::string& w) {
      std::size_t n = 0;
      for (const auto& p : c) n += static_cast<std::size_t>(std::count(p.begin(), p.end(), w));
      return n;
    };
    for (const std::string w : {"rise", "storm", "warnings"}) CHECK(freq(twice, w) >= freq(once, w));
  }
}
