#include "corpusdiv/counts.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "corpusdiv/error.hpp"

namespace corpusdiv {

CategoryCounts::CategoryCounts(std::initializer_list<std::pair<std::string_view, Count>> init) {
  for (const auto& [category, n] : init) add(category, n);
}

void CategoryCounts::add(std::string_view category, Count n) {
  if (n < 1) throw DomainError("CategoryCounts::add: count must be >= 1");
  auto it = counts_.find(category);
  if (it == counts_.end()) {
    counts_.emplace(std::string(category), n);
  } else {
    it->second += n;
  }
  total_ += n;
}

void CategoryCounts::add(const CategoryCounts& other) {
  for (const auto& [category, n] : other.counts_) add(category, n);
}

Count CategoryCounts::get(std::string_view category) const {
  auto it = counts_.find(category);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, Count>> CategoryCounts::sorted() const {
  std::vector<std::pair<std::string, Count>> out(counts_.begin(), counts_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<Count> CategoryCounts::values() const {
  std::vector<Count> out;
  out.reserve(counts_.size());
  for (const auto& [category, n] : counts_) out.push_back(n);
  return out;
}

CategoryCounts merge(const CategoryCounts& a, const CategoryCounts& b) {
  CategoryCounts out = a;
  out.add(b);
  return out;
}

std::string escape_category(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_category(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    char c = escaped[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (++i == escaped.size()) throw InputError("count table: dangling backslash");
    switch (escaped[i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case '\\': out += '\\'; break;
      default: throw InputError("count table: unknown escape \\" + std::string(1, escaped[i]));
    }
  }
  return out;
}

void write_count_table(std::ostream& out, const CategoryCounts& counts) {
  for (const auto& [category, n] : counts.sorted()) {
    out << escape_category(category) << '\t' << n << '\n';
  }
}

std::string count_table_string(const CategoryCounts& counts) {
  std::ostringstream out;
  write_count_table(out, counts);
  return out.str();
}

CategoryCounts read_count_table(std::istream& in) {
  CategoryCounts counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw InputError("count table line " + std::to_string(lineno) + ": missing tab");
    }
    std::string_view num(line.data() + tab + 1, line.size() - tab - 1);
    Count n = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (ec != std::errc{} || ptr != num.data() + num.size() || n < 1) {
      throw InputError("count table line " + std::to_string(lineno) + ": bad count '" +
                       std::string(num) + "'");
    }
    std::string category = unescape_category(std::string_view(line.data(), tab));
    if (counts.contains(category)) {
      throw InputError("count table line " + std::to_string(lineno) + ": duplicate category");
    }
    counts.add(category, n);
  }
  return counts;
}

CategoryCounts read_count_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open count table: " + path);
  return read_count_table(in);
}

}  // namespace corpusdiv
