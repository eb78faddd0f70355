#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "corpusdiv/entropy.hpp"
#include "corpusdiv/error.hpp"
#include "corpusdiv/synthetic.hpp"
#include "corpusdiv/syntax.hpp"
#include "test_util.hpp"

using namespace corpusdiv;

namespace {

std::vector<DependencySentence> load(const std::string& name) {
  return parse_conllu_file(testutil::data_path(name), {PosColumn::xpos, true}).sentences;
}

}  // namespace

TEST_CASE("subtree keys of the low-variety sentences") {
  const auto s = load("lvhb.conllu");
  REQUIRE(s.size() == 2);
  CHECK(subtree_key(s[0], 4) == "D N A V PONCT | 2:1:det,2:3:mod,4:2:suj,4:5:ponct");
  CHECK(subtree_key(s[0], 2) == "D N A | 2:1:det,2:3:mod");
  CHECK(subtree_key(s[0], 1) == "D |");
  const auto counts = syntactic_counts(s);
  CHECK(counts == CategoryCounts{{"D N A V PONCT | 2:1:det,2:3:mod,4:2:suj,4:5:ponct", 2},
                                 {"D N A | 2:1:det,2:3:mod", 2},
                                 {"D |", 2},
                                 {"A |", 2},
                                 {"PONCT |", 2}});
  for (double a : {0.0, 1.0, 2.0}) CHECK(renyi_entropy(counts, AlphaOrder(a)) == doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("subtree keys of the high-variety sentence") {
  const auto s = load("hvlb.conllu");
  REQUIRE(s.size() == 1);
  const auto counts = syntactic_counts(s);
  CHECK(counts == CategoryCounts{
                      {"D N V D N P D N A PONCT | 2:1:det,3:2:suj,3:5:obj,3:10:ponct,5:4:det,5:6:dep,6:8:obj.p,8:7:det,8:9:mod", 1},
                      {"D N P D N A | 2:1:det,2:3:dep,3:5:obj.p,5:4:det,5:6:mod", 1},
                      {"P D N A | 1:3:obj.p,3:2:det,3:4:mod", 1},
                      {"D N A | 2:1:det,2:3:mod", 1},
                      {"D N | 2:1:det", 1},
                      {"D |", 3},
                      {"A |", 1},
                      {"PONCT |", 1}});
  CHECK(counts.total() == 10);
  CHECK(renyi_entropy(counts, AlphaOrder(0)) == doctest::Approx(2.0794415416798357).epsilon(1e-12));
  CHECK(shannon_entropy(counts) == doctest::Approx(1.9730014063936125).epsilon(1e-12));
  CHECK(renyi_entropy(counts, AlphaOrder(2)) == doctest::Approx(1.8325814637483102).epsilon(1e-12));
}

TEST_CASE("lexical counts use forms") {
  const auto s = load("lvhb.conllu");
  const auto lex = lexical_counts(s);
  CHECK(lex.get("la") == 2);
  CHECK(lex.get(".") == 2);
  CHECK(lex.total() == 10);
}

TEST_CASE("malformed trees") {
  const std::string cycle =
      "1\ta\ta\tD\tD\t_\t2\tdet\t_\t_\n"
      "2\tb\tb\tN\tN\t_\t1\tdep\t_\t_\n"
      "3\tc\tc\tV\tV\t_\t0\troot\t_\t_\n\n";
  const std::string ok = "1\tx\tx\tV\tV\t_\t0\troot\t_\t_\n\n";
  {
    std::istringstream in(cycle + ok);
    const auto r = parse_conllu(in);
    CHECK(r.rejected == 1);
    REQUIRE(r.sentences.size() == 1);
    CHECK(r.sentences[0].tokens[0].form == "x");
  }
  {
    std::istringstream in(cycle);
    CHECK_THROWS_AS(parse_conllu(in, {PosColumn::xpos, true}), InputError);
  }
  for (const std::string bad : {
           "1\ta\ta\tD\tD\t_\t0\troot\t_\t_\n2\tb\tb\tN\tN\t_\t0\troot\t_\t_\n\n",  // two roots
           "1\ta\ta\tD\tD\t_\t5\tdet\t_\t_\n\n",                                   // head out of range
           "1\ta\ta\tD\tD\t_\t1\tdet\t_\t_\n\n",                                   // self loop
           "1\ta\ta\tD\tD\n\n",                                                   // short row
           "2\ta\ta\tD\tD\t_\t0\troot\t_\t_\n\n",                                  // bad index
       }) {
    std::istringstream in(bad);
    const auto r = parse_conllu(in);
    CHECK(r.sentences.empty());
    CHECK(r.rejected == 1);
  }
}

TEST_CASE("reader skips comments, ranges and empty nodes; keeps order") {
  const std::string text =
      "# c\n"
      "1-2\tau\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\ta\ta\tADP\t_\t_\t0\troot\t_\t_\n"
      "2\tle\tle\tDET\tD\t_\t1\tdet\t_\t_\n"
      "2.1\tx\tx\tX\tX\t_\t_\t_\t_\t_\n"
      "\n"
      "1\tseul\tseul\tADJ\tA\t_\t0\troot\t_\t_\n";
  std::istringstream in(text);
  const auto r = parse_conllu(in);
  REQUIRE(r.sentences.size() == 2);
  CHECK(r.sentences[0].size() == 2);
  CHECK(r.sentences[0].tokens[0].pos == "ADP");  // fallback to UPOS
  CHECK(r.sentences[0].tokens[1].pos == "D");
  REQUIRE(r.sentences[1].size() == 1);
  CHECK(extract_subtrees(r.sentences[1]) == CategoryCounts{{"A |", 1}});

  std::istringstream in2(text);
  const auto u = parse_conllu(in2, {PosColumn::upos, false});
  CHECK(u.sentences[0].tokens[1].pos == "DET");
}

TEST_CASE("properties on random trees") {
  synthetic::TreebankSpec spec;
  spec.sentences = 200;
  spec.seed = 17;
  const auto bank = synthetic::random_treebank(spec);
  for (const auto& s : bank) {
    REQUIRE(s.validation_error().empty());
    const auto sub = extract_subtrees(s);
    CHECK(static_cast<std::size_t>(sub.total()) == s.size());

    // forms do not matter
    auto renamed = s;
    for (auto& t : renamed.tokens) t.form = "zz" + t.form;
    CHECK(extract_subtrees(renamed) == sub);

    for (const auto& t : s.tokens) {
      const auto key = subtree_key(s, t.index);
      const auto bar = key.find(" |");
      REQUIRE(bar != std::string::npos);
      const bool is_leaf = std::none_of(s.tokens.begin(), s.tokens.end(), [&](const auto& o) { return o.head == t.index; });
      CHECK(is_leaf == (key == t.pos + " |"));
      // node count equals edge count + 1
      const auto nodes = std::count(key.begin(), key.begin() + static_cast<long>(bar), ' ') + 1;
      const auto tail = key.substr(bar + 2);
      const auto edges = tail.empty() ? 0 : std::count(tail.begin(), tail.end(), ',') + 1;
      CHECK(nodes == edges + 1);
    }
  }
}
