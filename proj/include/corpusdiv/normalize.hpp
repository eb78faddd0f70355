#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "corpusdiv/counts.hpp"

namespace corpusdiv {

// Noise classes, listed in the order the rules are applied.
enum class NoiseClass : std::size_t {
  tag,
  url,
  path,
  alnum,
  number,
  emoticon,
  puncts,
  phonetic,
  nonfr,
};

inline constexpr std::size_t kNoiseClassCount = 9;
inline constexpr std::array<NoiseClass, kNoiseClassCount> kRuleOrder = {
    NoiseClass::tag,    NoiseClass::url,      NoiseClass::path,
    NoiseClass::alnum,  NoiseClass::number,   NoiseClass::emoticon,
    NoiseClass::puncts, NoiseClass::phonetic, NoiseClass::nonfr,
};

std::string_view noise_class_name(NoiseClass c);

struct NormalizerConfig {
  std::array<std::string, kNoiseClassCount> placeholders;
  std::array<bool, kNoiseClassCount> enabled;
  // Letters beyond ASCII that belong to the French range (UTF-8).
  std::string french_letters;
  // Punctuation beyond ASCII: in the French range and counted by PUNCTS.
  std::string punctuation_extra;
  // Other symbols accepted as French-range characters.
  std::string symbols_extra;

  static NormalizerConfig defaults();

  // Flat `key = value` text; rule order is part of it.
  std::string serialize() const;
  static NormalizerConfig parse(std::string_view text);
  static NormalizerConfig load(const std::string& path);
  // Hex FNV-1a 64 of serialize().
  std::string fingerprint() const;
  // Throws ConfigError on empty or whitespace-containing placeholders.
  void validate() const;

  const std::string& placeholder(NoiseClass c) const { return placeholders[static_cast<std::size_t>(c)]; }
  bool is_enabled(NoiseClass c) const { return enabled[static_cast<std::size_t>(c)]; }
};

struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  std::string joined() const;
};

// Collapses each noise span to one placeholder token, then splits on
// whitespace. Invalid UTF-8 bytes are decoded as U+FFFD and therefore end
// up in a NONFR chunk.
class Normalizer {
 public:
  explicit Normalizer(NormalizerConfig config = NormalizerConfig::defaults());

  TokenSequence normalize(std::string_view text) const;
  const NormalizerConfig& config() const noexcept { return config_; }

 private:
  NormalizerConfig config_;
  std::u32string letters_;
  std::u32string punct_extra_;
  std::u32string symbols_;
};

TokenSequence normalize(std::string_view text, const NormalizerConfig& config = NormalizerConfig::defaults());

CategoryCounts token_counts(const TokenSequence& seq);

// UTF-8 helpers, exposed for tests.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view cps);

}  // namespace corpusdiv
