#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corpusdiv/corpus_io.hpp"
#include "corpusdiv/syntax.hpp"

namespace corpusdiv::synthetic {

// Letters-only word for a rank (bijective base 26: 0 -> "a", 26 -> "aa").
// Survives normalization unchanged.
std::string word_for_rank(std::size_t rank);

struct ZipfCorpusSpec {
  std::size_t documents = 5000;
  std::size_t vocabulary = 50000;
  std::size_t min_length = 50;   // tokens per document, inclusive
  std::size_t max_length = 150;
  std::uint64_t seed = 1;
  std::string id_prefix = "doc";
};

// Documents whose tokens are drawn i.i.d. from a Zipf(1) law over the
// vocabulary. Deterministic on every platform (weights are 1/r, sampling is
// inverse-CDF on Rng::uniform01).
std::vector<Document> zipf_corpus(const ZipfCorpusSpec& spec);

struct TreebankSpec {
  std::size_t sentences = 100;
  std::size_t min_length = 1;
  std::size_t max_length = 12;
  std::size_t pos_tags = 6;      // drawn from a fixed tag list
  std::size_t deprels = 5;       // drawn from a fixed relation list
  std::size_t vocabulary = 200;
  std::uint64_t seed = 1;
};

// Random well-formed dependency trees (single root, no cycles).
std::vector<DependencySentence> random_treebank(const TreebankSpec& spec);

std::string to_jsonl(std::span<const Document> docs);
std::string to_conllu(std::span<const DependencySentence> sentences);

}  // namespace corpusdiv::synthetic
