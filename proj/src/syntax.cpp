#include "corpusdiv/syntax.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>

#include "corpusdiv/error.hpp"

namespace corpusdiv {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::vector<int>> children_of(const DependencySentence& s) {
  std::vector<std::vector<int>> children(s.size() + 1);
  for (const auto& t : s.tokens) children[static_cast<std::size_t>(t.head)].push_back(t.index);
  return children;
}

}  // namespace

std::string DependencySentence::validation_error() const {
  const int n = static_cast<int>(tokens.size());
  if (n == 0) return "empty sentence";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const auto& t = tokens[static_cast<std::size_t>(i)];
    if (t.index != i + 1) return "token ids are not consecutive from 1";
    if (t.head < 0 || t.head > n) return "head out of range at token " + std::to_string(t.index);
    if (t.head == t.index) return "token " + std::to_string(t.index) + " governs itself";
    if (t.pos.empty() || t.deprel.empty()) return "empty POS or deprel at token " + std::to_string(t.index);
    if (t.head == 0) ++roots;
  }
  if (roots != 1) return std::to_string(roots) + " roots";
  // Every token must reach the root within n steps.
  for (const auto& t : tokens) {
    int cur = t.index;
    int steps = 0;
    while (cur != 0 && steps <= n) {
      cur = tokens[static_cast<std::size_t>(cur - 1)].head;
      ++steps;
    }
    if (cur != 0) return "head cycle through token " + std::to_string(t.index);
  }
  return {};
}

ConlluReader::ConlluReader(const std::string& path, ConlluOptions options)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)), in_(owned_.get()), options_(options) {
  if (!*owned_) throw InputError("cannot open treebank: " + path);
}

ConlluReader::ConlluReader(std::istream& in, ConlluOptions options) : in_(&in), options_(options) {}

void ConlluReader::reject(const std::string& msg) {
  if (options_.strict) throw InputError(msg);
  ++rejected_;
  if (diagnostics_.size() < 100) diagnostics_.push_back(msg);
}

std::optional<DependencySentence> ConlluReader::finish(std::vector<std::string>& pending, std::size_t first_line) {
  std::vector<std::string> rows;
  rows.swap(pending);
  DependencySentence sentence;
  const std::string where = "sentence at line " + std::to_string(first_line);
  for (const auto& row : rows) {
    const auto cols = split_tabs(row);
    if (cols.size() < 8) {
      reject(where + ": expected at least 8 columns");
      return std::nullopt;
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
    DependencyToken tok;
    if (!parse_int(cols[0], tok.index) || !parse_int(cols[6], tok.head)) {
      reject(where + ": bad ID or HEAD column");
      return std::nullopt;
    }
    tok.form = std::string(cols[1]);
    const auto upos = cols[3];
    const auto xpos = cols[4];
    auto primary = options_.pos == PosColumn::xpos ? xpos : upos;
    auto fallback = options_.pos == PosColumn::xpos ? upos : xpos;
    tok.pos = std::string(primary != "_" && !primary.empty() ? primary : fallback);
    if (tok.pos == "_") tok.pos.clear();
    tok.deprel = std::string(cols[7]);
    sentence.tokens.push_back(std::move(tok));
  }
  if (auto err = sentence.validation_error(); !err.empty()) {
    reject(where + ": " + err);
    return std::nullopt;
  }
  return sentence;
}

std::optional<DependencySentence> ConlluReader::next() {
  std::vector<std::string> rows;
  std::size_t first_line = 0;
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (rows.empty()) continue;
      if (auto s = finish(rows, first_line)) return s;
      continue;
    }
    if (line[0] == '#') continue;
    if (rows.empty()) first_line = line_;
    rows.push_back(line);
  }
  if (!rows.empty()) return finish(rows, first_line);
  return std::nullopt;
}

ConlluParseResult parse_conllu(std::istream& in, const ConlluOptions& options) {
  ConlluReader reader(in, options);
  ConlluParseResult out;
  while (auto s = reader.next()) out.sentences.push_back(std::move(*s));
  out.rejected = reader.rejected();
  out.diagnostics = reader.diagnostics();
  return out;
}

ConlluParseResult parse_conllu_file(const std::string& path, const ConlluOptions& options) {
  ConlluReader reader(path, options);
  ConlluParseResult out;
  while (auto s = reader.next()) out.sentences.push_back(std::move(*s));
  out.rejected = reader.rejected();
  out.diagnostics = reader.diagnostics();
  return out;
}

namespace {

std::string key_from_nodes(const DependencySentence& sentence, std::vector<int>& nodes, int root) {
  std::sort(nodes.begin(), nodes.end());
  auto rank = [&](int index) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), index) - nodes.begin()) + 1;
  };
  std::string key;
  std::vector<std::tuple<int, int, std::string_view>> edges;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& t = sentence.tokens[static_cast<std::size_t>(nodes[k] - 1)];
    if (k) key += ' ';
    key += t.pos;
    if (t.index != root) edges.emplace_back(rank(t.head), static_cast<int>(k) + 1, t.deprel);
  }
  std::sort(edges.begin(), edges.end());
  key += " |";
  for (std::size_t k = 0; k < edges.size(); ++k) {
    key += k ? ',' : ' ';
    key += std::to_string(std::get<0>(edges[k]));
    key += ':';
    key += std::to_string(std::get<1>(edges[k]));
    key += ':';
    key += std::get<2>(edges[k]);
  }
  return key;
}

void collect(const std::vector<std::vector<int>>& children, int node, std::vector<int>& out) {
  out.push_back(node);
  for (int c : children[static_cast<std::size_t>(node)]) collect(children, c, out);
}

}  // namespace

std::string subtree_key(const DependencySentence& sentence, int root) {
  if (root < 1 || root > static_cast<int>(sentence.size())) throw DomainError("subtree_key: root out of range");
  const auto children = children_of(sentence);
  std::vector<int> nodes;
  collect(children, root, nodes);
  return key_from_nodes(sentence, nodes, root);
}

CategoryCounts extract_subtrees(const DependencySentence& sentence) {
  const auto children = children_of(sentence);
  CategoryCounts counts;
  std::vector<int> nodes;
  for (const auto& t : sentence.tokens) {
    nodes.clear();
    collect(children, t.index, nodes);
    counts.add(key_from_nodes(sentence, nodes, t.index));
  }
  return counts;
}

CategoryCounts syntactic_counts(std::span<const DependencySentence> sentences) {
  CategoryCounts counts;
  for (const auto& s : sentences) counts.add(extract_subtrees(s));
  return counts;
}

CategoryCounts lexical_counts(std::span<const DependencySentence> sentences) {
  CategoryCounts counts;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) counts.add(t.form);
  }
  return counts;
}

}  // namespace corpusdiv
