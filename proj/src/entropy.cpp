#include "corpusdiv/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corpusdiv/error.hpp"
#include "corpusdiv/numeric.hpp"

namespace corpusdiv {

AlphaOrder::AlphaOrder(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("Renyi order must be finite and >= 0");
  }
}

namespace {

struct Summary {
  Count total = 0;
  std::size_t variety = 0;
};

Summary summarize(std::span<const Count> counts) {
  Summary s;
  for (Count c : counts) {
    if (c < 0) throw DomainError("negative count");
    if (c == 0) continue;
    s.total += c;
    ++s.variety;
  }
  if (s.variety == 0) throw DomainError("entropy of an empty distribution is undefined");
  return s;
}

}  // namespace

double shannon_entropy(std::span<const Count> counts) {
  const Summary s = summarize(counts);
  const double m = static_cast<double>(s.total);
  CompensatedSum acc;
  for (Count c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / m;
    acc.add(-p * std::log(p));
  }
  return std::max(0.0, acc.value());
}

double renyi_entropy(std::span<const Count> counts, AlphaOrder alpha) {
  if (alpha.is_shannon()) return shannon_entropy(counts);
  const Summary s = summarize(counts);
  if (alpha.is_variety()) return std::log(static_cast<double>(s.variety));

  // ln sum p_i^a via log-sum-exp, so large orders do not overflow.
  const double a = alpha.value();
  const double log_m = std::log(static_cast<double>(s.total));
  double max_term = -std::numeric_limits<double>::infinity();
  for (Count c : counts) {
    if (c > 0) max_term = std::max(max_term, a * (std::log(static_cast<double>(c)) - log_m));
  }
  CompensatedSum acc;
  for (Count c : counts) {
    if (c > 0) acc.add(std::exp(a * (std::log(static_cast<double>(c)) - log_m) - max_term));
  }
  const double log_sum = max_term + std::log(acc.value());
  return std::max(0.0, log_sum / (1.0 - a));
}

double shannon_entropy(const CategoryCounts& counts) {
  const auto v = counts.values();
  return shannon_entropy(std::span<const Count>(v));
}

double renyi_entropy(const CategoryCounts& counts, AlphaOrder alpha) {
  const auto v = counts.values();
  return renyi_entropy(std::span<const Count>(v), alpha);
}

DiversityProfile diversity_profile(std::span<const Count> counts, std::span<const AlphaOrder> alphas) {
  DiversityProfile profile;
  profile.alphas.assign(alphas.begin(), alphas.end());
  profile.values.reserve(alphas.size());
  for (AlphaOrder a : alphas) profile.values.push_back(renyi_entropy(counts, a));
  return profile;
}

DiversityProfile diversity_profile(const CategoryCounts& counts, std::span<const AlphaOrder> alphas) {
  const auto v = counts.values();
  return diversity_profile(std::span<const Count>(v), alphas);
}

std::vector<AlphaOrder> alpha_grid(double max, double step) {
  if (!(step > 0.0) || !(max >= 0.0)) throw ConfigError("alpha grid needs step > 0 and max >= 0");
  const double inv = std::round(1.0 / step);
  const bool reciprocal = inv >= 1.0 && std::fabs(inv * step - 1.0) < 1e-12;
  const auto n = static_cast<std::size_t>(std::floor(max / step + 1e-9)) + 1;
  std::vector<AlphaOrder> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = reciprocal ? static_cast<double>(i) / inv : static_cast<double>(i) * step;
    grid.emplace_back(a);
  }
  return grid;
}

}  // namespace corpusdiv
