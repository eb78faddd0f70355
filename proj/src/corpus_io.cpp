#include "corpusdiv/corpus_io.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "corpusdiv/error.hpp"
#include "corpusdiv/format.hpp"

namespace corpusdiv {

CorpusReader::CorpusReader(const std::string& path, Strictness strictness)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)), in_(owned_.get()), strictness_(strictness) {
  if (!*owned_) throw InputError("cannot open corpus: " + path);
}

CorpusReader::CorpusReader(std::istream& in, Strictness strictness) : in_(&in), strictness_(strictness) {}

std::optional<Document> CorpusReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string problem;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.is_object()) {
        problem = "not a JSON object";
      } else if (!j.contains("id") || !(j["id"].is_string() || j["id"].is_number_integer())) {
        problem = "missing string field 'id'";
      } else if (!j.contains("text") || !j["text"].is_string()) {
        problem = "missing string field 'text'";
      } else {
        Document doc;
        doc.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
        doc.text = j["text"].get<std::string>();
        return doc;
      }
    } catch (const nlohmann::json::exception& e) {
      problem = e.what();
    }
    const std::string msg = "corpus line " + std::to_string(line_) + ": " + problem;
    if (strictness_ == Strictness::strict) throw InputError(msg);
    ++warnings_;
    if (diagnostics_.size() < 100) diagnostics_.push_back(msg);
  }
  return std::nullopt;
}

std::vector<Document> read_documents(const std::string& path, Strictness strictness, std::size_t* warnings) {
  CorpusReader reader(path, strictness);
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  while (auto doc = reader.next()) {
    if (!seen.insert(doc->id).second) throw InputError("duplicate document id '" + doc->id + "' in " + path);
    docs.push_back(std::move(*doc));
  }
  if (warnings) *warnings = reader.warnings();
  return docs;
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_below(0)");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

RandomSubset random_subset(std::span<const Count> token_counts, Count target_tokens, std::uint64_t seed) {
  if (target_tokens <= 0) throw ConfigError("random_subset: target_tokens must be > 0");
  std::vector<std::size_t> order(token_counts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  RandomSubset out;
  for (std::size_t idx : order) {
    if (out.tokens >= target_tokens) break;
    out.indices.push_back(idx);
    out.tokens += token_counts[idx];
  }
  out.short_of_target = out.tokens < target_tokens;
  return out;
}

RandomSubset random_subset(std::span<const Document> docs, Count target_tokens, std::uint64_t seed) {
  std::vector<Count> tokens;
  tokens.reserve(docs.size());
  for (const auto& d : docs) tokens.push_back(d.token_count);
  return random_subset(std::span<const Count>(tokens), target_tokens, seed);
}

std::string RunManifest::render(std::string_view prefix) const {
  std::ostringstream out;
  out << prefix << "command = " << command << '\n';
  out << prefix << "args =";
  for (const auto& a : args) out << ' ' << a;
  out << '\n';
  out << prefix << "normalizer_fingerprint = " << (normalizer_fingerprint.empty() ? "none" : normalizer_fingerprint)
      << '\n';
  out << prefix << "seeds =";
  if (seeds.empty()) out << " none";
  for (auto s : seeds) out << ' ' << s;
  out << '\n';
  for (const auto& [path, digest] : input_digests) {
    out << prefix << "input = " << path << " fnv1a64:" << digest << '\n';
  }
  out << prefix << "version = " << version << '\n';
  return out.str();
}

std::string render_sample_manifest(std::span<const std::string> ids,
                                   std::span<const std::pair<std::string, std::string>> footer) {
  std::string out;
  for (const auto& id : ids) {
    out += id;
    out += '\n';
  }
  for (const auto& [key, value] : footer) {
    out += "# " + key + " = " + value + "\n";
  }
  return out;
}

std::pair<std::vector<std::string>, std::vector<std::pair<std::string, std::string>>>
parse_sample_manifest(std::istream& in) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> footer;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      ids.push_back(line);
      continue;
    }
    const auto eq = line.find(" = ");
    if (eq == std::string::npos || eq < 2) continue;
    footer.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
  }
  return {std::move(ids), std::move(footer)};
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  }
  return hex64(h);
}

void write_file_locked(const std::string& path, std::string_view contents) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw InputError("cannot open " + path + " for writing: " + std::strerror(errno));
  struct Closer {
    int fd;
    ~Closer() { ::close(fd); }
  } closer{fd};
  if (::flock(fd, LOCK_EX) != 0 || ::ftruncate(fd, 0) != 0) {
    throw InputError("cannot lock " + path + ": " + std::strerror(errno));
  }
  std::size_t written = 0;
  while (written < contents.size()) {
    const auto n = ::write(fd, contents.data() + written, contents.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw InputError("write failed for " + path + ": " + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
}

}  // namespace corpusdiv
