#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpusdiv/counts.hpp"
#include "corpusdiv/entropy.hpp"
#include "corpusdiv/numeric.hpp"

namespace corpusdiv {

using CategoryId = std::uint32_t;

// A CategoryCounts delta whose categories were interned by an accumulator.
// Entries are sorted by id and unique.
struct SparseDelta {
  std::vector<std::pair<CategoryId, Count>> entries;
  Count total = 0;

  bool empty() const noexcept { return entries.empty(); }
};

// Streaming sufficient statistics for Shannon and Rényi entropies:
// total M, sum c*ln(c), and sum c^a for each tracked order a. Orders 0 and 1
// are always available; any other order must be declared at construction.
//
// entropy() and entropy_gain() are const and touch only the categories of
// the delta, so concurrent readers are safe as long as no apply_delta() or
// intern() runs at the same time.
class EntropyAccumulator {
 public:
  explicit EntropyAccumulator(std::vector<AlphaOrder> tracked = {});
  EntropyAccumulator(const CategoryCounts& initial, std::vector<AlphaOrder> tracked = {});

  // Assigns ids to unseen categories (with count 0). Not thread-safe.
  CategoryId intern(std::string_view category);
  SparseDelta intern(const CategoryCounts& delta);

  bool tracks(AlphaOrder alpha) const noexcept;
  const std::vector<AlphaOrder>& tracked() const noexcept { return tracked_; }

  // Throws DomainError when the accumulator is empty and ConfigError for an
  // untracked order.
  double entropy(AlphaOrder alpha = AlphaOrder{}) const;

  // H(W + delta) - H(W) without mutating W. For an empty W the current
  // entropy is taken as 0, so the gain equals H(delta).
  double entropy_gain(const SparseDelta& delta, AlphaOrder alpha = AlphaOrder{}) const;
  double entropy_gain(const CategoryCounts& delta, AlphaOrder alpha = AlphaOrder{}) const;

  void apply_delta(const SparseDelta& delta);
  void apply_delta(const CategoryCounts& delta);

  Count total() const noexcept { return total_; }
  std::size_t variety() const noexcept { return variety_; }
  bool empty() const noexcept { return total_ == 0; }
  Count count(CategoryId id) const noexcept { return id < counts_.size() ? counts_[id] : 0; }
  double sum_c_ln_c() const noexcept { return sum_c_ln_c_.value(); }
  double power_sum(AlphaOrder alpha) const;

  CategoryCounts counts() const;

 private:
  std::size_t power_index(AlphaOrder alpha) const;
  double entropy_from(Count total, std::size_t variety, double sum_c_ln_c, double power_sum,
                      AlphaOrder alpha) const;
  template <typename Lookup>
  double gain_impl(Count delta_total, Lookup&& for_each_entry, AlphaOrder alpha) const;

  std::unordered_map<std::string, CategoryId, StringHash, std::equal_to<>> ids_;
  std::vector<std::string> names_;
  std::vector<Count> counts_;

  Count total_ = 0;
  std::size_t variety_ = 0;
  CompensatedSum sum_c_ln_c_;
  std::vector<AlphaOrder> tracked_;
  std::vector<CompensatedSum> power_sums_;
};

}  // namespace corpusdiv
