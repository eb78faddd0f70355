#include "corpusdiv/accumulator.hpp"

#include <algorithm>
#include <cmath>

#include "corpusdiv/error.hpp"

namespace corpusdiv {

namespace {

double power(Count c, double a) { return c > 0 ? std::pow(static_cast<double>(c), a) : 0.0; }

}  // namespace

EntropyAccumulator::EntropyAccumulator(std::vector<AlphaOrder> tracked) {
  for (AlphaOrder a : tracked) {
    if (a.is_shannon() || a.is_variety()) continue;
    if (std::find(tracked_.begin(), tracked_.end(), a) == tracked_.end()) tracked_.push_back(a);
  }
  power_sums_.resize(tracked_.size());
}

EntropyAccumulator::EntropyAccumulator(const CategoryCounts& initial, std::vector<AlphaOrder> tracked)
    : EntropyAccumulator(std::move(tracked)) {
  if (!initial.empty()) apply_delta(intern(initial));
}

CategoryId EntropyAccumulator::intern(std::string_view category) {
  auto it = ids_.find(category);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<CategoryId>(names_.size());
  names_.emplace_back(category);
  ids_.emplace(names_.back(), id);
  counts_.push_back(0);
  return id;
}

SparseDelta EntropyAccumulator::intern(const CategoryCounts& delta) {
  SparseDelta out;
  out.entries.reserve(delta.variety());
  for (const auto& [category, n] : delta.items()) out.entries.emplace_back(intern(category), n);
  std::sort(out.entries.begin(), out.entries.end());
  out.total = delta.total();
  return out;
}

bool EntropyAccumulator::tracks(AlphaOrder alpha) const noexcept {
  return alpha.is_shannon() || alpha.is_variety() ||
         std::find(tracked_.begin(), tracked_.end(), alpha) != tracked_.end();
}

std::size_t EntropyAccumulator::power_index(AlphaOrder alpha) const {
  auto it = std::find(tracked_.begin(), tracked_.end(), alpha);
  if (it == tracked_.end()) {
    throw ConfigError("Renyi order " + std::to_string(alpha.value()) +
                      " is not tracked by this accumulator");
  }
  return static_cast<std::size_t>(it - tracked_.begin());
}

double EntropyAccumulator::power_sum(AlphaOrder alpha) const {
  if (alpha.is_variety()) return static_cast<double>(variety_);
  if (alpha.is_shannon()) return static_cast<double>(total_);
  return power_sums_[power_index(alpha)].value();
}

double EntropyAccumulator::entropy_from(Count total, std::size_t variety, double s, double p,
                                        AlphaOrder alpha) const {
  const double log_m = std::log(static_cast<double>(total));
  if (alpha.is_variety()) return std::log(static_cast<double>(variety));
  if (alpha.is_shannon()) return log_m - s / static_cast<double>(total);
  const double a = alpha.value();
  return (std::log(p) - a * log_m) / (1.0 - a);
}

double EntropyAccumulator::entropy(AlphaOrder alpha) const {
  if (empty()) throw DomainError("entropy of an empty distribution is undefined");
  if (alpha.is_shannon() || alpha.is_variety()) {
    return entropy_from(total_, variety_, sum_c_ln_c_.value(), 0.0, alpha);
  }
  return entropy_from(total_, variety_, 0.0, power_sums_[power_index(alpha)].value(), alpha);
}

template <typename ForEach>
double EntropyAccumulator::gain_impl(Count delta_total, ForEach&& for_each_entry,
                                     AlphaOrder alpha) const {
  if (delta_total <= 0) throw DomainError("entropy_gain: empty delta");
  const Count new_total = total_ + delta_total;

  if (alpha.is_variety()) {
    std::size_t fresh = 0;
    for_each_entry([&](Count c, Count) { fresh += c == 0 ? 1 : 0; });
    const double before = empty() ? 0.0 : std::log(static_cast<double>(variety_));
    return std::log(static_cast<double>(variety_ + fresh)) - before;
  }
  if (alpha.is_shannon()) {
    CompensatedSum s = sum_c_ln_c_;
    for_each_entry([&](Count c, Count d) {
      s.add(xlogx(static_cast<double>(c + d)) - xlogx(static_cast<double>(c)));
    });
    const double before = empty() ? 0.0 : entropy_from(total_, variety_, sum_c_ln_c_.value(), 0.0, alpha);
    return entropy_from(new_total, 0, s.value(), 0.0, alpha) - before;
  }
  const std::size_t k = power_index(alpha);
  const double a = alpha.value();
  CompensatedSum p = power_sums_[k];
  for_each_entry([&](Count c, Count d) { p.add(power(c + d, a) - power(c, a)); });
  const double before = empty() ? 0.0 : entropy_from(total_, variety_, 0.0, power_sums_[k].value(), alpha);
  return entropy_from(new_total, 0, 0.0, p.value(), alpha) - before;
}

double EntropyAccumulator::entropy_gain(const SparseDelta& delta, AlphaOrder alpha) const {
  return gain_impl(
      delta.total,
      [&](auto&& fn) {
        for (const auto& [id, d] : delta.entries) fn(count(id), d);
      },
      alpha);
}

double EntropyAccumulator::entropy_gain(const CategoryCounts& delta, AlphaOrder alpha) const {
  return gain_impl(
      delta.total(),
      [&](auto&& fn) {
        for (const auto& [category, d] : delta.items()) {
          auto it = ids_.find(category);
          fn(it == ids_.end() ? 0 : counts_[it->second], d);
        }
      },
      alpha);
}

void EntropyAccumulator::apply_delta(const SparseDelta& delta) {
  if (delta.total <= 0 || delta.empty()) throw DomainError("apply_delta: empty delta");
  for (const auto& [id, d] : delta.entries) {
    if (id >= counts_.size()) throw DomainError("apply_delta: category id was not interned here");
    const Count c = counts_[id];
    sum_c_ln_c_.add(xlogx(static_cast<double>(c + d)) - xlogx(static_cast<double>(c)));
    for (std::size_t k = 0; k < tracked_.size(); ++k) {
      const double a = tracked_[k].value();
      power_sums_[k].add(power(c + d, a) - power(c, a));
    }
    if (c == 0) ++variety_;
    counts_[id] = c + d;
  }
  total_ += delta.total;
}

void EntropyAccumulator::apply_delta(const CategoryCounts& delta) { apply_delta(intern(delta)); }

CategoryCounts EntropyAccumulator::counts() const {
  CategoryCounts out;
  for (std::size_t id = 0; id < counts_.size(); ++id) {
    if (counts_[id] > 0) out.add(names_[id], counts_[id]);
  }
  return out;
}

}  // namespace corpusdiv
