#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpusdiv/entropy.hpp"
#include "corpusdiv/syntax.hpp"

namespace corpusdiv {

struct Block {
  std::size_t index = 0;
  std::size_t begin = 0;  // [begin, end) in corpus order
  std::size_t end = 0;
  bool partial = false;

  std::size_t size() const noexcept { return end - begin; }
};

// Consecutive non-overlapping blocks; a short final block is kept and
// flagged partial.
std::vector<Block> block_split(std::size_t n_items, std::size_t block_size);

struct NormalityResult {
  double statistic = 0.0;  // K^2 = z_skew^2 + z_kurtosis^2
  double p_value = 0.0;    // chi-squared survival function, 2 dof
  double skew_z = 0.0;
  double kurtosis_z = 0.0;
};

// D'Agostino-Pearson omnibus test. Needs n >= 8 and non-zero variance.
NormalityResult normality_test(std::span<const double> samples);

struct BaselineDistribution {
  std::vector<double> samples;
  double mean = 0.0;
  double stddev = 0.0;  // n - 1 denominator

  static BaselineDistribution from_samples(std::vector<double> samples);
};

struct SigmaDistance {
  double sigmas = 0.0;
  double p_value = 1.0;  // two-sided normal tail
  bool underflow = false;  // p fell below the smallest normal double; reported as 0
};

SigmaDistance sigma_distance(double value, double mean, double stddev);
SigmaDistance sigma_distance(double value, const BaselineDistribution& baseline);

double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);
// Ranks starting at 1; ties get the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

struct BlockProfile {
  std::size_t block = 0;
  bool partial = false;
  DiversityProfile lexical;
  DiversityProfile syntactic;
};

BlockProfile block_profile(std::span<const DependencySentence> sentences, const Block& block,
                           std::span<const AlphaOrder> alphas);

struct ClsdRow {
  double alpha = 0.0;
  double pearson = 0.0;   // NaN when a column has zero variance at this order
  double spearman = 0.0;
  std::size_t n_blocks = 0;
};

// Correlates lexical against syntactic H_alpha across blocks, one row per
// order. Partial blocks are skipped unless `include_partial`. Needs >= 3
// blocks.
std::vector<ClsdRow> clsd_report(std::span<const BlockProfile> profiles, bool include_partial = false);

std::string csv_field(const std::string& raw);
std::string clsd_csv(std::span<const ClsdRow> rows);
std::string profiles_csv(std::span<const BlockProfile> profiles);
std::string baseline_csv(std::span<const std::uint64_t> seeds, const BaselineDistribution& baseline,
                         const std::optional<NormalityResult>& normality);
std::string significance_csv(double value, const SigmaDistance& d);

}  // namespace corpusdiv
