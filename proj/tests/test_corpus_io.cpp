#include <doctest.h>

#include <set>
#include <sstream>

#include "corpusdiv/corpus_io.hpp"
#include "corpusdiv/error.hpp"
#include "test_util.hpp"

using namespace corpusdiv;

TEST_CASE("reads records in file order") {
  const auto docs = read_documents(testutil::data_path("three_docs.jsonl"));
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].id == "d1");
  CHECK(docs[1].id == "d2");
  CHECK(docs[2].text == "a b");
}

TEST_CASE("empty input yields no documents") {
  std::istringstream in("");
  CorpusReader reader(in);
  CHECK_FALSE(reader.next().has_value());
  CHECK(reader.warnings() == 0);
}

TEST_CASE("malformed lines: lenient skips, strict throws") {
  std::string body;
  for (int i = 0; i < 10; ++i) {
    if (i == 4)
      body += "{\"id\": \"x\", \"text\": \n";
    else
      body += "{\"id\": \"d" + std::to_string(i) + "\", \"text\": \"mot " + std::to_string(i) + "\"}\n";
  }
  {
    std::istringstream in(body);
    CorpusReader reader(in);
    int n = 0;
    while (reader.next()) ++n;
    CHECK(n == 9);
    CHECK(reader.warnings() == 1);
    REQUIRE(reader.diagnostics().size() == 1);
    CHECK(reader.diagnostics()[0].find("5") != std::string::npos);
  }
  {
    std::istringstream in(body);
    CorpusReader reader(in, Strictness::strict);
    auto drain = [&] {
      while (reader.next()) {
      }
    };
    CHECK_THROWS_AS(drain(), InputError);
  }
}

TEST_CASE("record shape checks") {
  for (const char* bad : {"[1,2]", "{\"id\": \"a\"}", "{\"text\": \"a\"}", "{\"id\": 1.5, \"text\": \"a\"}",
                          "{\"id\": \"a\", \"text\": 3}"}) {
    std::istringstream in(std::string(bad) + "\n");
    CorpusReader reader(in, Strictness::strict);
    CHECK_THROWS_AS(reader.next(), InputError);
  }
  std::istringstream in("{\"id\": 7, \"text\": \"x\"}\n\n");
  CorpusReader reader(in, Strictness::strict);
  const auto d = reader.next();
  REQUIRE(d);
  CHECK(d->id == "7");
  CHECK_FALSE(reader.next());
}

TEST_CASE("duplicate ids are rejected") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("dup.jsonl"), "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
  CHECK_THROWS_AS(read_documents(dir.file("dup.jsonl")), InputError);
  CHECK_THROWS_AS(read_documents(dir.file("missing.jsonl")), InputError);
}

TEST_CASE("rng is reproducible and bounded") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  // the standard fixes the 10000th output of a default-seeded mt19937_64
  Rng c(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = c.next();
  CHECK(v == 9981545732273789042ULL);
  Rng d(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(d.uniform_below(7) < 7);
    const double u = d.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_THROWS(d.uniform_below(0));
}

TEST_CASE("shuffle is a permutation") {
  Rng rng(3);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(v);
  std::set<int> s(v.begin(), v.end());
  CHECK(s.size() == 50);
}

TEST_CASE("random subsets") {
  std::vector<Count> sizes;
  for (int i = 0; i < 200; ++i) sizes.push_back(10 + (i * 37) % 90);
  Count all = 0;
  for (auto s : sizes) all += s;

  SUBCASE("same seed, same list") {
    CHECK(random_subset(sizes, 1000, 9).indices == random_subset(sizes, 1000, 9).indices);
  }
  SUBCASE("different seeds give different samples that reach the target") {
    std::set<std::vector<std::size_t>> seen;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto r = random_subset(sizes, 1000, seed);
      CHECK(r.tokens >= 1000);
      CHECK_FALSE(r.short_of_target);
      // the last accepted document crosses the target
      CHECK(r.tokens - sizes[r.indices.back()] < 1000);
      std::set<std::size_t> uniq(r.indices.begin(), r.indices.end());
      CHECK(uniq.size() == r.indices.size());
      seen.insert(r.indices);
    }
    CHECK(seen.size() == 20);
  }
  SUBCASE("target beyond the corpus") {
    const auto r = random_subset(sizes, all + 1, 4);
    CHECK(r.short_of_target);
    CHECK(r.indices.size() == sizes.size());
    CHECK(r.tokens == all);
  }
  SUBCASE("target must be positive") { CHECK_THROWS_AS(random_subset(sizes, 0, 4), ConfigError); }
}

TEST_CASE("sample manifest round trip") {
  const std::vector<std::string> ids = {"d2", "d3", "x y"};
  const std::vector<std::pair<std::string, std::string>> footer = {{"seed", "7"}, {"final_entropy", "1.5"}};
  const auto text = render_sample_manifest(ids, footer);
  std::istringstream in(text);
  const auto [ids2, footer2] = parse_sample_manifest(in);
  CHECK(ids2 == ids);
  CHECK(footer2 == footer);
}

TEST_CASE("run manifest render is stable") {
  RunManifest m;
  m.command = "sample";
  m.args = {"--size", "10"};
  m.seeds = {3};
  m.normalizer_fingerprint = "abc";
  m.input_digests = {{"in.jsonl", "00ff"}};
  m.version = "1";
  CHECK(m.render() == m.render());
  CHECK(m.render("# ").rfind("# ", 0) == 0);
}

TEST_CASE("locked writes and digests") {
  testutil::TempDir dir;
  const auto p = dir.file("out.txt");
  write_file_locked(p, "long contents here");
  write_file_locked(p, "short");
  CHECK(testutil::read_file(p) == "short");
  testutil::write_file(dir.file("same.txt"), "short");
  CHECK(file_digest(p) == file_digest(dir.file("same.txt")));
  CHECK_THROWS_AS(file_digest(dir.file("nope")), InputError);
}
