#include "corpusdiv/normalize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "corpusdiv/error.hpp"
#include "corpusdiv/format.hpp"

namespace corpusdiv {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

constexpr std::array<std::string_view, kNoiseClassCount> kNames = {
    "tag", "url", "path", "alnum", "number", "emoticon", "puncts", "phonetic", "nonfr",
};

constexpr std::array<std::string_view, kNoiseClassCount> kDefaultPlaceholders = {
    "[TAG]", "[URL]", "[PATH]", "[ALNUM]", "[NUMBER]", "[EMOTICON]", "[PUNCTS]", "[PHONETIC]", "[NONFR]",
};

constexpr std::array<std::u32string_view, 31> kAsciiEmoticons = {
    U":)",  U":-)", U";)", U";-)", U":(",  U":-(", U":D", U":-D", U";D", U":P", U":-P",
    U":p",  U":-p", U"xD", U"XD",  U"<3",  U":'(", U":o", U":O",  U":-O", U"^^", U"^_^",
    U"-_-", U"o_O", U"O_o", U":/", U":-/", U":|",  U":*", U"=)",  U"=(",
};

bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_ascii_letter(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool is_ascii_alnum(char32_t c) { return is_ascii_letter(c) || is_digit(c); }
bool is_ascii_punct(char32_t c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}
bool is_ipa(char32_t c) { return c >= 0x250 && c <= 0x2AF; }
bool is_emoji(char32_t c) {
  return (c >= 0x1F000 && c <= 0x1FAFF) || (c >= 0x2600 && c <= 0x27BF);
}
bool is_emoji_joiner(char32_t c) { return c == 0x200D || c == 0xFE0F; }

bool in(std::u32string_view set, char32_t c) { return set.find(c) != std::u32string_view::npos; }

using Span = std::pair<std::size_t, std::size_t>;

struct Segment {
  std::u32string text;
  int placeholder = -1;
};

template <typename Fn>
void for_each_chunk(std::u32string_view text, Fn&& fn) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) fn(i, j);
    i = j;
  }
}

template <typename Pred>
std::vector<Span> chunks_where(std::u32string_view text, Pred&& pred) {
  std::vector<Span> spans;
  for_each_chunk(text, [&](std::size_t b, std::size_t e) {
    if (pred(text.substr(b, e - b))) spans.emplace_back(b, e);
  });
  return spans;
}

std::vector<Span> find_tags(std::u32string_view t) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == U'<') {
      const bool opener = (i + 1 < t.size() && is_ascii_letter(t[i + 1])) ||
                          (i + 2 < t.size() && t[i + 1] == U'/' && is_ascii_letter(t[i + 2]));
      if (opener) {
        const auto close = t.find(U'>', i + 1);
        if (close == std::u32string_view::npos) break;
        spans.emplace_back(i, close + 1);
        i = close + 1;
        continue;
      }
    }
    ++i;
  }
  return spans;
}

bool starts_with_ci(std::u32string_view s, std::u32string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char32_t c = s[k];
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    if (c != prefix[k]) return false;
  }
  return true;
}

std::vector<Span> find_urls(std::u32string_view t) {
  std::vector<Span> spans;
  for_each_chunk(t, [&](std::size_t b, std::size_t e) {
    const auto chunk = t.substr(b, e - b);
    for (std::size_t k = 0; k < chunk.size(); ++k) {
      if (k > 0 && is_ascii_alnum(chunk[k - 1])) continue;
      std::size_t start = std::u32string_view::npos;
      if (starts_with_ci(chunk.substr(k), U"www.")) {
        start = k;
      } else if (is_ascii_letter(chunk[k])) {
        std::size_t s = k;
        while (s < chunk.size() && (is_ascii_alnum(chunk[s]) || chunk[s] == U'+' ||
                                    chunk[s] == U'.' || chunk[s] == U'-')) {
          ++s;
        }
        if (chunk.substr(s, 3) == U"://" && s + 3 < chunk.size()) start = k;
      }
      if (start != std::u32string_view::npos) {
        spans.emplace_back(b + start, e);
        break;
      }
    }
  });
  return spans;
}

bool looks_like_path(std::u32string_view chunk) {
  std::size_t seps = 0, segments = 0, seg_len = 0;
  bool letter = false;
  for (char32_t c : chunk) {
    if (c == U'/' || c == U'\\') {
      ++seps;
      if (seg_len > 0) ++segments;
      seg_len = 0;
    } else {
      ++seg_len;
      letter = letter || is_ascii_letter(c);
    }
  }
  if (seg_len > 0) ++segments;
  return seps >= 2 && segments >= 2 && letter;
}

std::vector<Span> find_numbers(std::u32string_view t) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < t.size()) {
    if (!is_digit(t[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    std::size_t end = i;
    std::size_t digits = 0;
    std::size_t k = i;
    while (true) {
      while (k < t.size() && is_digit(t[k])) {
        ++k;
        ++digits;
      }
      end = k;
      // Separator: one of . - , or a run of whitespace, followed by a digit.
      std::size_t s = k;
      if (s < t.size() && (t[s] == U'.' || t[s] == U'-' || t[s] == U',')) {
        ++s;
      } else {
        while (s < t.size() && is_space(t[s])) ++s;
      }
      if (s > k && s < t.size() && is_digit(t[s])) {
        k = s;
        continue;
      }
      break;
    }
    if (digits >= 2) spans.emplace_back(begin, end);
    i = end;
  }
  return spans;
}

std::vector<Span> find_emoji(std::u32string_view t) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < t.size()) {
    if (!is_emoji(t[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < t.size() && (is_emoji(t[j]) || is_emoji_joiner(t[j]))) ++j;
    spans.emplace_back(i, j);
    i = j;
  }
  return spans;
}

template <typename Pred>
std::vector<Span> runs_where(std::u32string_view t, std::size_t min_len, Pred&& pred) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < t.size()) {
    if (!pred(t[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < t.size() && pred(t[j])) ++j;
    if (j - i >= min_len) spans.emplace_back(i, j);
    i = j;
  }
  return spans;
}

// Replaces `spans` of every free segment with a placeholder segment.
template <typename Finder>
void apply_rule(std::vector<Segment>& segments, int placeholder, Finder&& finder) {
  std::vector<Segment> out;
  out.reserve(segments.size());
  for (auto& seg : segments) {
    if (seg.placeholder >= 0) {
      out.push_back(std::move(seg));
      continue;
    }
    const auto spans = finder(std::u32string_view(seg.text));
    if (spans.empty()) {
      out.push_back(std::move(seg));
      continue;
    }
    std::size_t pos = 0;
    for (const auto& [b, e] : spans) {
      if (b > pos) out.push_back({seg.text.substr(pos, b - pos), -1});
      out.push_back({{}, placeholder});
      pos = e;
    }
    if (pos < seg.text.size()) out.push_back({seg.text.substr(pos), -1});
  }
  segments = std::move(out);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const auto n = bytes.size();
  auto cont = [&](std::size_t k) {
    return k < n && (static_cast<unsigned char>(bytes[k]) & 0xC0) == 0x80;
  };
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2; cp = b0 & 0x1F; min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3; cp = b0 & 0x0F; min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4; cp = b0 & 0x07; min = 0x10000;
    }
    bool ok = len > 0;
    for (std::size_t k = 1; ok && k < len; ++k) {
      ok = cont(i + k);
      if (ok) cp = (cp << 6) | (static_cast<unsigned char>(bytes[i + k]) & 0x3F);
    }
    ok = ok && cp >= min && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
    if (ok) {
      out.push_back(cp);
      i += len;
    } else {
      out.push_back(kReplacement);
      ++i;
    }
  }
  return out;
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

std::string_view noise_class_name(NoiseClass c) { return kNames[static_cast<std::size_t>(c)]; }

NormalizerConfig NormalizerConfig::defaults() {
  NormalizerConfig cfg;
  for (std::size_t k = 0; k < kNoiseClassCount; ++k) {
    cfg.placeholders[k] = std::string(kDefaultPlaceholders[k]);
    cfg.enabled[k] = true;
  }
  cfg.french_letters = "àâæçéèêëîïôœùûüÿÀÂÆÇÉÈÊËÎÏÔŒÙÛÜŸ";
  cfg.punctuation_extra = "«»‘’“”–—…";
  cfg.symbols_extra = "€°§·";
  return cfg;
}

std::string NormalizerConfig::serialize() const {
  std::ostringstream out;
  out << "rule_order = ";
  for (std::size_t k = 0; k < kRuleOrder.size(); ++k) {
    out << (k ? "," : "") << noise_class_name(kRuleOrder[k]);
  }
  out << '\n';
  for (NoiseClass c : kRuleOrder) {
    const auto k = static_cast<std::size_t>(c);
    out << noise_class_name(c) << ".enabled = " << (enabled[k] ? "true" : "false") << '\n';
    out << noise_class_name(c) << ".placeholder = " << placeholders[k] << '\n';
  }
  out << "french_letters = " << french_letters << '\n';
  out << "punctuation_extra = " << punctuation_extra << '\n';
  out << "symbols_extra = " << symbols_extra << '\n';
  return out.str();
}

NormalizerConfig NormalizerConfig::parse(std::string_view text) {
  NormalizerConfig cfg = defaults();
  std::istringstream in{std::string(text)};
  std::string line;
  std::string expected_order;
  for (std::size_t k = 0; k < kRuleOrder.size(); ++k) {
    expected_order += (k ? "," : "");
    expected_order += noise_class_name(kRuleOrder[k]);
  }
  while (std::getline(in, line)) {
    const auto stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw ConfigError("normalizer config: expected key = value: " + stripped);
    const auto key = trim(std::string_view(stripped).substr(0, eq));
    const auto value = trim(std::string_view(stripped).substr(eq + 1));
    if (key == "rule_order") {
      if (value != expected_order) throw ConfigError("normalizer config: rule_order is fixed to " + expected_order);
      continue;
    }
    if (key == "french_letters") { cfg.french_letters = value; continue; }
    if (key == "punctuation_extra") { cfg.punctuation_extra = value; continue; }
    if (key == "symbols_extra") { cfg.symbols_extra = value; continue; }
    bool matched = false;
    for (std::size_t k = 0; k < kNoiseClassCount && !matched; ++k) {
      const std::string prefix = std::string(kNames[k]) + ".";
      if (key == prefix + "enabled") {
        if (value != "true" && value != "false") throw ConfigError("normalizer config: " + key + " must be true or false");
        cfg.enabled[k] = value == "true";
        matched = true;
      } else if (key == prefix + "placeholder") {
        cfg.placeholders[k] = value;
        matched = true;
      }
    }
    if (!matched) throw ConfigError("normalizer config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

NormalizerConfig NormalizerConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open normalizer config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string NormalizerConfig::fingerprint() const { return hex64(fnv1a64(serialize())); }

void NormalizerConfig::validate() const {
  for (std::size_t k = 0; k < kNoiseClassCount; ++k) {
    const auto cps = decode_utf8(placeholders[k]);
    if (cps.empty() || std::any_of(cps.begin(), cps.end(), is_space)) {
      throw ConfigError("placeholder for " + std::string(kNames[k]) + " must be non-empty without whitespace");
    }
  }
}

std::string TokenSequence::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

Normalizer::Normalizer(NormalizerConfig config)
    : config_(std::move(config)),
      letters_(decode_utf8(config_.french_letters)),
      punct_extra_(decode_utf8(config_.punctuation_extra)),
      symbols_(decode_utf8(config_.symbols_extra)) {
  config_.validate();
}

TokenSequence Normalizer::normalize(std::string_view text) const {
  std::vector<Segment> segments;
  segments.push_back({decode_utf8(text), -1});

  auto is_letter = [&](char32_t c) { return is_ascii_letter(c) || in(letters_, c); };
  auto is_punct = [&](char32_t c) { return is_ascii_punct(c) || in(punct_extra_, c); };
  auto is_french = [&](char32_t c) {
    return (c >= 0x20 && c <= 0x7E) || in(letters_, c) || in(punct_extra_, c) || in(symbols_, c);
  };

  for (NoiseClass rule : kRuleOrder) {
    if (!config_.is_enabled(rule)) continue;
    const int ph = static_cast<int>(rule);
    switch (rule) {
      case NoiseClass::tag:
        apply_rule(segments, ph, find_tags);
        break;
      case NoiseClass::url:
        apply_rule(segments, ph, find_urls);
        break;
      case NoiseClass::path:
        apply_rule(segments, ph, [](std::u32string_view t) { return chunks_where(t, looks_like_path); });
        break;
      case NoiseClass::alnum:
        apply_rule(segments, ph, [&](std::u32string_view t) {
          return chunks_where(t, [&](std::u32string_view chunk) {
            const auto letters = std::count_if(chunk.begin(), chunk.end(), is_letter);
            const auto digits = std::count_if(chunk.begin(), chunk.end(), is_digit);
            return letters >= 2 && digits >= 2;
          });
        });
        break;
      case NoiseClass::number:
        apply_rule(segments, ph, find_numbers);
        break;
      case NoiseClass::emoticon:
        apply_rule(segments, ph, find_emoji);
        apply_rule(segments, ph, [](std::u32string_view t) {
          return chunks_where(t, [](std::u32string_view chunk) {
            return std::find(kAsciiEmoticons.begin(), kAsciiEmoticons.end(), chunk) != kAsciiEmoticons.end();
          });
        });
        break;
      case NoiseClass::puncts:
        apply_rule(segments, ph, [&](std::u32string_view t) { return runs_where(t, 3, is_punct); });
        break;
      case NoiseClass::phonetic:
        apply_rule(segments, ph, [](std::u32string_view t) {
          return chunks_where(t, [](std::u32string_view chunk) {
            return std::any_of(chunk.begin(), chunk.end(), is_ipa);
          });
        });
        break;
      case NoiseClass::nonfr:
        apply_rule(segments, ph, [&](std::u32string_view t) {
          return chunks_where(t, [&](std::u32string_view chunk) {
            return !std::all_of(chunk.begin(), chunk.end(), is_french);
          });
        });
        break;
    }
  }

  TokenSequence seq;
  for (const auto& seg : segments) {
    if (seg.placeholder >= 0) {
      seq.tokens.push_back(config_.placeholders[static_cast<std::size_t>(seg.placeholder)]);
      continue;
    }
    for_each_chunk(seg.text, [&](std::size_t b, std::size_t e) {
      seq.tokens.push_back(encode_utf8(std::u32string_view(seg.text).substr(b, e - b)));
    });
  }
  return seq;
}

TokenSequence normalize(std::string_view text, const NormalizerConfig& config) {
  return Normalizer(config).normalize(text);
}

CategoryCounts token_counts(const TokenSequence& seq) {
  CategoryCounts counts;
  for (const auto& t : seq.tokens) counts.add(t);
  return counts;
}

}  // namespace corpusdiv
