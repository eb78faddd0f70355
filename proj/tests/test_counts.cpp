#include <doctest.h>

#include <random>
#include <sstream>

#include "corpusdiv/counts.hpp"
#include "corpusdiv/error.hpp"
#include "test_util.hpp"

using namespace corpusdiv;

TEST_CASE("add keeps total equal to the sum of counts") {
  CategoryCounts c;
  c.add("la", 2);
  c.add("crique");
  c.add("la");
  CHECK(c.get("la") == 3);
  CHECK(c.get("absent") == 0);
  CHECK(c.total() == 4);
  CHECK(c.variety() == 2);
  CHECK_THROWS_AS(c.add("x", 0), DomainError);
}

TEST_CASE("merge is a pointwise sum") {
  CHECK(merge({{"a", 1}}, {{"a", 1}}) == CategoryCounts{{"a", 2}});
  const auto m = merge({{"a", 1}}, {{"b", 1}});
  CHECK(m == CategoryCounts{{"a", 1}, {"b", 1}});
  CHECK(m.total() == 2);
  CHECK(merge({}, {}).empty());
}

TEST_CASE("count table is sorted bytewise and escapes tab, newline, backslash") {
  CategoryCounts c{{"b", 1}, {"a\tb", 2}, {"x\ny", 3}, {"back\\slash", 4}, {"A", 5}};
  const auto tsv = count_table_string(c);
  CHECK(tsv == "A\t5\na\\tb\t2\nb\t1\nback\\\\slash\t4\nx\\ny\t3\n");
}

TEST_CASE("count table round-trips arbitrary byte strings") {
  std::mt19937_64 rng(7);
  const std::string alphabet = std::string("ab\t\n\\ \xc3\xa9#", 10);
  for (int trial = 0; trial < 50; ++trial) {
    CategoryCounts c;
    const auto n = rng() % 40;
    for (std::size_t i = 0; i < n; ++i) {
      std::string key;
      const auto len = rng() % 6;
      for (std::size_t k = 0; k < len; ++k) key += alphabet[rng() % alphabet.size()];
      c.add(key, static_cast<Count>(1 + rng() % 1000));
    }
    std::istringstream in(count_table_string(c));
    CHECK(read_count_table(in) == c);
  }
}

TEST_CASE("malformed count tables are rejected") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_count_table(in);
  };
  CHECK_THROWS_AS(parse("a\n"), InputError);
  CHECK_THROWS_AS(parse("a\t0\n"), InputError);
  CHECK_THROWS_AS(parse("a\tx\n"), InputError);
  CHECK_THROWS_AS(parse("a\t1\na\t2\n"), InputError);
  CHECK_THROWS_AS(parse("a\\q\t1\n"), InputError);
  CHECK(parse("").empty());
  CHECK_THROWS_AS(read_count_table_file("/nonexistent/counts.tsv"), InputError);
}
