#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpusdiv/corpus_io.hpp"
#include "corpusdiv/counts.hpp"
#include "corpusdiv/entropy.hpp"
#include "corpusdiv/kernels.hpp"
#include "corpusdiv/normalize.hpp"

namespace corpusdiv {

// Gains at or below this are treated as "no increase"; gains within it of
// each other are ties.
inline constexpr double kGainEpsilon = 1e-12;

struct SamplerConfig {
  Count target_size = 0;                 // S, in normalized tokens
  std::vector<Count> exhaustivity{1000, 100, 10, 1};  // E, strictly decreasing, last >= 1
  AlphaOrder alpha{1.0};
  std::optional<std::uint64_t> seed;     // shuffles candidate order when set

  void validate() const;
};

// A normalized candidate document.
struct Candidate {
  std::string id;
  CategoryCounts counts;

  Count tokens() const noexcept { return counts.total(); }
};

std::vector<Candidate> prepare_candidates(std::span<Document> docs, const Normalizer& normalizer,
                                          Execution exec = Execution::serial);

struct TrajectoryPoint {
  std::string doc_id;
  Count tokens_total = 0;
  double entropy = 0.0;
};

struct LevelUsage {
  Count exhaustivity = 0;
  std::size_t commits = 0;
};

struct SampleResult {
  std::vector<std::string> selected;
  double final_entropy = 0.0;  // NaN if the working corpus stayed empty
  Count tokens_total = 0;
  std::vector<TrajectoryPoint> trajectory;
  bool reached_target = false;
  std::vector<LevelUsage> exhaustivity_used;
};

// Greedy exhaustivity-scheduled selection. For each level e, unselected
// candidates are scanned in order; a candidate qualifies if adding it raises
// the working entropy (every candidate qualifies while the working corpus is
// empty). After e qualifying candidates the best one (earliest on ties) is
// committed and scanning resumes after the candidate that closed the window.
// A partial window at the end of the stream is flushed. The next level
// rescans the remaining candidates from the start. Stops as soon as the
// working corpus holds >= target_size tokens.
SampleResult heuristic_sample(const CategoryCounts& initial, std::span<const Candidate> candidates,
                              const SamplerConfig& config, Execution exec = Execution::serial);

// Seeded random baseline: random_subset over the candidates up to
// target_size - initial.total() tokens, applied in acceptance order.
SampleResult random_sample(const CategoryCounts& initial, std::span<const Candidate> candidates, Count target_size,
                           std::uint64_t seed, AlphaOrder alpha = AlphaOrder{});

struct BruteForceResult {
  std::vector<std::string> selected;  // candidate order
  double entropy = 0.0;
  Count tokens_total = 0;
  bool reached_target = false;
};

inline constexpr std::size_t kMaxBruteForceCandidates = 20;

// Exhaustive search over all subsets whose token total (initial included)
// reaches target_size; maximizes entropy, ties go to fewer tokens, then to
// the lexicographically smaller id list. If no subset reaches the target
// the full set is returned with reached_target = false.
BruteForceResult optimal_sample_bruteforce(const CategoryCounts& initial, std::span<const Candidate> candidates,
                                           Count target_size, AlphaOrder alpha = AlphaOrder{});

std::string trajectory_csv(const SampleResult& result);

}  // namespace corpusdiv
