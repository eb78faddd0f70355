#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace corpusdiv {

using Count = std::int64_t;

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

// Multiset of category -> count. Every stored count is >= 1 and total()
// is the sum of all stored counts.
class CategoryCounts {
 public:
  using Map = std::unordered_map<std::string, Count, StringHash, std::equal_to<>>;

  CategoryCounts() = default;
  CategoryCounts(std::initializer_list<std::pair<std::string_view, Count>> init);

  // n must be >= 1.
  void add(std::string_view category, Count n = 1);
  void add(const CategoryCounts& other);

  Count get(std::string_view category) const;
  bool contains(std::string_view category) const { return counts_.find(category) != counts_.end(); }

  Count total() const noexcept { return total_; }
  std::size_t variety() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }

  const Map& items() const noexcept { return counts_; }

  // Entries sorted bytewise by category.
  std::vector<std::pair<std::string, Count>> sorted() const;
  // Counts only, in unspecified order.
  std::vector<Count> values() const;

  friend bool operator==(const CategoryCounts& a, const CategoryCounts& b) {
    return a.total_ == b.total_ && a.counts_ == b.counts_;
  }

 private:
  Map counts_;
  Count total_ = 0;
};

// Pointwise sum.
CategoryCounts merge(const CategoryCounts& a, const CategoryCounts& b);

// Count-table TSV: escaped category, tab, decimal count; one pair per line,
// sorted bytewise by category. Escapes: tab -> \t, newline -> \n,
// backslash -> \\.
std::string escape_category(std::string_view raw);
std::string unescape_category(std::string_view escaped);

void write_count_table(std::ostream& out, const CategoryCounts& counts);
std::string count_table_string(const CategoryCounts& counts);
CategoryCounts read_count_table(std::istream& in);
CategoryCounts read_count_table_file(const std::string& path);

}  // namespace corpusdiv
