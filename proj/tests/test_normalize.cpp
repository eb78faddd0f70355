#include <doctest.h>

#include <random>

#include "corpusdiv/corpus_io.hpp"
#include "corpusdiv/error.hpp"
#include "corpusdiv/normalize.hpp"
#include "test_util.hpp"

using namespace corpusdiv;

namespace {

std::vector<std::string> toks(std::string_view text) { return normalize(text).tokens; }
using V = std::vector<std::string>;

}  // namespace

TEST_CASE("numbers collapse to one placeholder") {
  CHECK(toks("Appelez le 0612345678") == V{"Appelez", "le", "[NUMBER]"});
  CHECK(toks("Appelez le 06 12 34 56 78 vite") == V{"Appelez", "le", "[NUMBER]", "vite"});
  CHECK(toks("+33-6-12-34-56-78") == V{"+", "[NUMBER]"});
  CHECK(toks("pi vaut 3,14") == V{"pi", "vaut", "[NUMBER]"});
  CHECK(toks("le 2 mai") == V{"le", "2", "mai"});
}

TEST_CASE("empty and whitespace-only input") {
  CHECK(toks("").empty());
  CHECK(toks(" \t\n\u00a0 ").empty());
}

TEST_CASE("punctuation series") {
  CHECK(toks("salut !!!???!!!") == V{"salut", "[PUNCTS]"});
  CHECK(toks("bon... bref") == V{"bon", "[PUNCTS]", "bref"});
  CHECK(toks("oui !") == V{"oui", "!"});
  CHECK(toks("quoi?!") == V{"quoi?!"});
}

TEST_CASE("tags, urls and paths") {
  CHECK(toks("<p>Bonjour</p> monde") == V{"[TAG]", "Bonjour", "[TAG]", "monde"});
  CHECK(toks("<a href=\"x\">lien</a>") == V{"[TAG]", "lien", "[TAG]"});
  CHECK(toks("a < b et c > d") == V{"a", "<", "b", "et", "c", ">", "d"});
  CHECK(toks("voir https://exemple.fr/page?id=3 ici") == V{"voir", "[URL]", "ici"});
  CHECK(toks("voir www.exemple.fr.") == V{"voir", "[URL]"});
  CHECK(toks("fichier /usr/local/bin ou C:\\Users\\moi") == V{"fichier", "[PATH]", "ou", "[PATH]"});
  CHECK(toks("et/ou") == V{"et/ou"});
}

TEST_CASE("emoticons, alphanumerics, phonetics and non-French characters") {
  CHECK(toks("super :) merci") == V{"super", "[EMOTICON]", "merci"});
  CHECK(toks("top\xF0\x9F\x98\x80\xF0\x9F\x98\x80 !") == V{"top", "[EMOTICON]", "!"});
  CHECK(toks("code A3B4C5 ok") == V{"code", "[ALNUM]", "ok"});
  CHECK(toks("COVID-19") == V{"[ALNUM]"});
  CHECK(toks("/\xC9\x99/ est un son") == V{"[PHONETIC]", "est", "un", "son"});
  CHECK(toks("Stra\xC3\x9F" "e") == V{"[NONFR]"});
  CHECK(toks("\xD0\x9C\xD0\xBE\xD1\x81\xD0\xBA\xD0\xB2\xD0\xB0 et Paris") == V{"[NONFR]", "et", "Paris"});
  CHECK(toks("\xC5\x93uvre na\xC3\xAFve \xC3\x80 l'\xC3\xA9t\xC3\xA9 \xC2\xAB oui \xC2\xBB") ==
        V{"\xC5\x93uvre", "na\xC3\xAFve", "\xC3\x80", "l'\xC3\xA9t\xC3\xA9", "\xC2\xAB", "oui", "\xC2\xBB"});
}

TEST_CASE("invalid UTF-8 bytes become NONFR, never dropped") {
  CHECK(toks("abc\xff") == V{"[NONFR]"});
  CHECK(toks("ok \xC0\xAF fin") == V{"ok", "[NONFR]", "fin"});
  CHECK(decode_utf8("\xED\xA0\x80") == std::u32string(3, 0xFFFD));  // surrogate
}

TEST_CASE("case is preserved") {
  const auto c = token_counts(normalize("La la LA"));
  CHECK(c.variety() == 3);
}

TEST_CASE("token_counts") {
  const auto c = token_counts(TokenSequence{{"la", "crique", "la"}});
  CHECK(c == CategoryCounts{{"la", 2}, {"crique", 1}});
  CHECK(c.total() == 3);
  CHECK(token_counts(TokenSequence{}).empty());

  CategoryCounts lvhb;
  for (const auto& d : read_documents(testutil::data_path("lvhb.jsonl"))) lvhb.add(token_counts(normalize(d.text)));
  CHECK(lvhb == CategoryCounts{{".", 2}, {"la", 2}, {"bleue", 1}, {"brille", 1},
                               {"crique", 1}, {"nage", 1}, {"pieuvre", 1}, {"sauvage", 1}});
}

TEST_CASE("normalization is idempotent and placeholder-sound on random text") {
  const std::vector<std::string> pieces = {
      "a",  "Z", "é", "ß", "1", "23", " ", "  ", "\n", ".", "!", "?", "-", ",", "/", "\\", "<", ">", "<b>", "</i>",
      ":)", ":", ")", "http://", "www.", "x", "\xC9\x99", "\xF0\x9F\x98\x80", "\xff", "«", "…", "[", "]", "ab12", "_",
  };
  const Normalizer normalizer;
  const auto& placeholders = normalizer.config().placeholders;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    const auto n = rng() % 25;
    for (std::size_t i = 0; i < n; ++i) text += pieces[rng() % pieces.size()];
    const auto once = normalizer.normalize(text);
    const auto twice = normalizer.normalize(once.joined());
    CHECK_MESSAGE(once.tokens == twice.tokens, "input: ", text);
    std::size_t ph = 0;
    for (const auto& t : once.tokens) {
      CHECK_FALSE(t.empty());
      CHECK(t.find_first_of(" \t\n") == std::string::npos);
      ph += std::find(placeholders.begin(), placeholders.end(), t) != placeholders.end();
    }
    CHECK(ph <= text.size());
  }
}

TEST_CASE("config serializes, parses and fingerprints") {
  const auto def = NormalizerConfig::defaults();
  const auto round = NormalizerConfig::parse(def.serialize());
  CHECK(round.serialize() == def.serialize());
  CHECK(round.fingerprint() == def.fingerprint());

  auto cfg = NormalizerConfig::parse("number.enabled = false\nnumber.placeholder = <NUM>\n");
  CHECK(cfg.fingerprint() != def.fingerprint());
  CHECK(normalize("tel 0612", cfg).tokens == V{"tel", "0612"});
  cfg.enabled[static_cast<std::size_t>(NoiseClass::number)] = true;
  CHECK(normalize("tel 0612", cfg).tokens == V{"tel", "<NUM>"});

  CHECK_THROWS_AS(NormalizerConfig::parse("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(NormalizerConfig::parse("tag.placeholder = a b\n"), ConfigError);
  CHECK_THROWS_AS(NormalizerConfig::parse("rule_order = url,tag\n"), ConfigError);
  CHECK_THROWS_AS(NormalizerConfig::parse("tag.enabled = maybe\n"), ConfigError);
}

TEST_CASE("determinism") {
  const std::string text = "Le 12/03, voir http://a.b et <i>ça</i> !!! :) \xC9\x99 ok";
  CHECK(normalize(text).tokens == normalize(text).tokens);
}
