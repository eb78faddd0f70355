#pragma once

#include <span>
#include <vector>

#include "corpusdiv/counts.hpp"

namespace corpusdiv {

// Rényi order. Any finite value >= 0; 1 selects the Shannon formula.
class AlphaOrder {
 public:
  AlphaOrder() = default;
  explicit AlphaOrder(double value);

  double value() const noexcept { return value_; }
  bool is_shannon() const noexcept { return value_ == 1.0; }
  bool is_variety() const noexcept { return value_ == 0.0; }

  friend bool operator==(AlphaOrder a, AlphaOrder b) { return a.value_ == b.value_; }
  friend auto operator<=>(AlphaOrder a, AlphaOrder b) { return a.value_ <=> b.value_; }

 private:
  double value_ = 1.0;
};

// All entropies use the natural logarithm. Empty distributions are a
// DomainError. Zero counts in the span overloads are ignored.
double shannon_entropy(const CategoryCounts& counts);
double shannon_entropy(std::span<const Count> counts);
double renyi_entropy(const CategoryCounts& counts, AlphaOrder alpha);
double renyi_entropy(std::span<const Count> counts, AlphaOrder alpha);

struct DiversityProfile {
  std::vector<AlphaOrder> alphas;
  std::vector<double> values;
};

DiversityProfile diversity_profile(const CategoryCounts& counts, std::span<const AlphaOrder> alphas);
DiversityProfile diversity_profile(std::span<const Count> counts, std::span<const AlphaOrder> alphas);

// 0, step, 2*step, ..., max (inclusive). For step = 1/k the points are
// computed as i/k so that e.g. 0.3 is exactly the double nearest 3/10.
std::vector<AlphaOrder> alpha_grid(double max = 5.0, double step = 0.1);

}  // namespace corpusdiv
