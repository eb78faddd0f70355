#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpusdiv/counts.hpp"

namespace corpusdiv {

struct Document {
  std::string id;
  std::string text;
  Count token_count = 0;
};

enum class Strictness { lenient, strict };

// Streams line-delimited JSON objects {"id": ..., "text": ...} in file
// order. Blank lines are ignored. In lenient mode malformed lines are
// skipped and counted; in strict mode they raise InputError.
class CorpusReader {
 public:
  CorpusReader(const std::string& path, Strictness strictness = Strictness::lenient);
  CorpusReader(std::istream& in, Strictness strictness = Strictness::lenient);

  std::optional<Document> next();

  std::size_t warnings() const noexcept { return warnings_; }
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  Strictness strictness_;
  std::size_t line_ = 0;
  std::size_t warnings_ = 0;
  std::vector<std::string> diagnostics_;
};

// Reads a whole corpus; duplicate ids raise InputError.
std::vector<Document> read_documents(const std::string& path, Strictness strictness = Strictness::lenient,
                                     std::size_t* warnings = nullptr);

// Seeded generator with a fixed, documented algorithm: std::mt19937_64
// (whose output sequence the C++ standard pins down), bounded integers by
// rejection of x < 2^64 mod n followed by x mod n, Fisher-Yates shuffles
// from the last index down, and doubles from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t uniform_below(std::uint64_t n);
  double uniform01();

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomSubset {
  std::vector<std::size_t> indices;  // in acceptance order
  Count tokens = 0;
  bool short_of_target = false;
};

// Shuffles document indices with `seed` and accepts them in shuffled order
// until the cumulative token count reaches `target_tokens` (the document
// that crosses the target is included).
RandomSubset random_subset(std::span<const Count> token_counts, Count target_tokens, std::uint64_t seed);
RandomSubset random_subset(std::span<const Document> docs, Count target_tokens, std::uint64_t seed);

// Run provenance written next to every output.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::string normalizer_fingerprint;
  std::vector<std::uint64_t> seeds;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path, fnv1a64 hex
  std::string version;

  // `key = value` lines, each prefixed with `prefix`.
  std::string render(std::string_view prefix = "") const;
};

// Sample manifest: one id per line, then a '#' comment block.
std::string render_sample_manifest(std::span<const std::string> ids,
                                   std::span<const std::pair<std::string, std::string>> footer);
// Parses ids and `# key = value` footer lines.
std::pair<std::vector<std::string>, std::vector<std::pair<std::string, std::string>>>
parse_sample_manifest(std::istream& in);

std::string file_digest(const std::string& path);

// Writes `contents` to `path` while holding an exclusive flock on it.
void write_file_locked(const std::string& path, std::string_view contents);

}  // namespace corpusdiv
