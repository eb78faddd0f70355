#pragma once

#include <cstddef>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpusdiv/counts.hpp"

namespace corpusdiv {

struct DependencyToken {
  int index = 0;  // 1-based
  std::string form;
  std::string pos;
  int head = 0;  // 0 = root
  std::string deprel;
};

struct DependencySentence {
  std::vector<DependencyToken> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  // Empty string when the sentence is a well-formed tree, else the reason.
  std::string validation_error() const;
};

enum class PosColumn { upos, xpos };

struct ConlluOptions {
  PosColumn pos = PosColumn::xpos;
  bool strict = false;
};

// Streams sentences from CoNLL-U text. Comment lines, multiword-token
// ranges (1-2) and empty nodes (1.1) are skipped. If the selected POS
// column is "_" the other POS column is used. Sentences that are not a
// single-rooted tree are rejected: strict mode throws InputError, lenient
// mode skips them and records a diagnostic.
class ConlluReader {
 public:
  ConlluReader(const std::string& path, ConlluOptions options = {});
  ConlluReader(std::istream& in, ConlluOptions options = {});

  std::optional<DependencySentence> next();

  std::size_t rejected() const noexcept { return rejected_; }
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::optional<DependencySentence> finish(std::vector<std::string>& rows, std::size_t first_line);
  void reject(const std::string& msg);

  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  ConlluOptions options_;
  std::size_t line_ = 0;
  std::size_t rejected_ = 0;
  std::vector<std::string> diagnostics_;
};

struct ConlluParseResult {
  std::vector<DependencySentence> sentences;
  std::size_t rejected = 0;
  std::vector<std::string> diagnostics;
};

ConlluParseResult parse_conllu(std::istream& in, const ConlluOptions& options = {});
ConlluParseResult parse_conllu_file(const std::string& path, const ConlluOptions& options = {});

// Canonical key of the complete subtree rooted at token `root` (1-based):
// POS tags of the subtree's nodes in surface order, then its internal edges
// as governor:dependent:deprel with 1-based positions inside the subtree,
// sorted. The root's own incoming edge is not part of the key.
//   "D N A | 2:1:det,2:3:mod"    leaf: "D |"
std::string subtree_key(const DependencySentence& sentence, int root);

// One element per token: the subtree rooted at that token.
CategoryCounts extract_subtrees(const DependencySentence& sentence);

CategoryCounts syntactic_counts(std::span<const DependencySentence> sentences);
// Word-form counts of the parsed sentences.
CategoryCounts lexical_counts(std::span<const DependencySentence> sentences);

}  // namespace corpusdiv
