#include "corpusdiv/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "corpusdiv/accumulator.hpp"
#include "corpusdiv/analysis.hpp"
#include "corpusdiv/error.hpp"
#include "corpusdiv/format.hpp"

namespace corpusdiv {

void SamplerConfig::validate() const {
  if (target_size <= 0) throw ConfigError("target size must be > 0");
  if (exhaustivity.empty()) throw ConfigError("exhaustivity schedule must not be empty");
  for (std::size_t i = 0; i < exhaustivity.size(); ++i) {
    if (exhaustivity[i] < 1) throw ConfigError("exhaustivity values must be >= 1");
    if (i > 0 && exhaustivity[i] >= exhaustivity[i - 1]) {
      throw ConfigError("exhaustivity schedule must be strictly decreasing");
    }
  }
}

std::vector<Candidate> prepare_candidates(std::span<Document> docs, const Normalizer& normalizer, Execution exec) {
  auto seqs = normalize_documents(exec, normalizer, docs);
  std::vector<Candidate> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    docs[i].token_count = static_cast<Count>(seqs[i].size());
    out.push_back({docs[i].id, token_counts(seqs[i])});
  }
  return out;
}

namespace {

std::vector<AlphaOrder> tracked_for(AlphaOrder alpha) {
  if (alpha.is_shannon() || alpha.is_variety()) return {};
  return {alpha};
}

double current_entropy(const EntropyAccumulator& acc, AlphaOrder alpha) {
  return acc.empty() ? std::nan("") : acc.entropy(alpha);
}

constexpr std::size_t kMinChunk = 32;
constexpr std::size_t kMaxChunk = 4096;

}  // namespace

SampleResult heuristic_sample(const CategoryCounts& initial, std::span<const Candidate> candidates,
                              const SamplerConfig& config, Execution exec) {
  config.validate();
  const AlphaOrder alpha = config.alpha;
  EntropyAccumulator acc(initial, tracked_for(alpha));

  std::vector<SparseDelta> deltas;
  deltas.reserve(candidates.size());
  for (const auto& c : candidates) deltas.push_back(acc.intern(c.counts));

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  if (config.seed) Rng(*config.seed).shuffle(order);

  std::vector<bool> selected(candidates.size(), false);
  SampleResult result;
  result.tokens_total = acc.total();

  auto commit = [&](std::size_t idx) {
    acc.apply_delta(deltas[idx]);
    selected[idx] = true;
    result.tokens_total = acc.total();
    result.selected.push_back(candidates[idx].id);
    result.trajectory.push_back({candidates[idx].id, result.tokens_total, acc.entropy(alpha)});
    ++result.exhaustivity_used.back().commits;
    return result.tokens_total >= config.target_size;
  };
  auto finish = [&](bool reached) {
    result.reached_target = reached;
    result.final_entropy = current_entropy(acc, alpha);
    return result;
  };

  if (result.tokens_total >= config.target_size) return finish(true);

  std::vector<double> gains;
  for (Count e : config.exhaustivity) {
    result.exhaustivity_used.push_back({e, 0});

    std::vector<std::size_t> pool;
    for (std::size_t idx : order) {
      if (!selected[idx] && !deltas[idx].empty()) pool.push_back(idx);
    }

    Count qualified = 0;
    std::size_t best = pool.size();
    double best_gain = 0.0;
    std::size_t pos = 0;
    std::size_t chunk = kMinChunk;
    while (pos < pool.size()) {
      const std::size_t end = std::min(pool.size(), pos + chunk);
      const auto window = std::span<const std::size_t>(pool).subspan(pos, end - pos);
      gains.resize(window.size());
      evaluate_gains(exec, acc, deltas, window, alpha, gains);

      bool committed = false;
      const bool anything_qualifies = acc.empty();
      for (std::size_t j = pos; j < end; ++j) {
        const double g = gains[j - pos];
        if (!(anything_qualifies || g > kGainEpsilon)) continue;
        ++qualified;
        if (best == pool.size() || g > best_gain + kGainEpsilon) {
          best = j;
          best_gain = g;
        }
        if (qualified == e) {
          if (commit(pool[best])) return finish(true);
          qualified = 0;
          best = pool.size();
          pos = j + 1;
          committed = true;
          break;
        }
      }
      if (committed) {
        chunk = kMinChunk;
      } else {
        pos = end;
        chunk = std::min(chunk * 2, kMaxChunk);
      }
    }
    if (best != pool.size() && commit(pool[best])) return finish(true);
  }
  return finish(false);
}

SampleResult random_sample(const CategoryCounts& initial, std::span<const Candidate> candidates, Count target_size,
                           std::uint64_t seed, AlphaOrder alpha) {
  if (target_size <= 0) throw ConfigError("target size must be > 0");
  EntropyAccumulator acc(initial, tracked_for(alpha));
  SampleResult result;
  result.tokens_total = acc.total();
  const Count wanted = target_size - initial.total();
  if (wanted > 0) {
    std::vector<Count> tokens;
    tokens.reserve(candidates.size());
    for (const auto& c : candidates) tokens.push_back(c.tokens());
    const auto subset = random_subset(std::span<const Count>(tokens), wanted, seed);
    for (std::size_t idx : subset.indices) {
      const auto& c = candidates[idx];
      if (!c.counts.empty()) acc.apply_delta(c.counts);
      result.selected.push_back(c.id);
      result.tokens_total = acc.total();
      result.trajectory.push_back({c.id, result.tokens_total, current_entropy(acc, alpha)});
    }
  }
  result.reached_target = result.tokens_total >= target_size;
  result.final_entropy = current_entropy(acc, alpha);
  return result;
}

BruteForceResult optimal_sample_bruteforce(const CategoryCounts& initial, std::span<const Candidate> candidates,
                                           Count target_size, AlphaOrder alpha) {
  if (candidates.size() > kMaxBruteForceCandidates) {
    throw ConfigError("brute-force search is limited to " + std::to_string(kMaxBruteForceCandidates) +
                      " candidates");
  }
  if (target_size <= 0) throw ConfigError("target size must be > 0");

  // Dense category ids, independent of EntropyAccumulator.
  std::unordered_map<std::string, std::size_t> ids;
  auto id_of = [&](const std::string& key) {
    auto [it, inserted] = ids.emplace(key, ids.size());
    return it->second;
  };
  std::vector<Count> base;
  for (const auto& [key, n] : initial.items()) {
    const auto id = id_of(key);
    base.resize(std::max(base.size(), id + 1), 0);
    base[id] += n;
  }
  std::vector<std::vector<std::pair<std::size_t, Count>>> docs(candidates.size());
  std::vector<Count> doc_tokens(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (const auto& [key, n] : candidates[i].counts.items()) docs[i].emplace_back(id_of(key), n);
    doc_tokens[i] = candidates[i].tokens();
  }
  base.resize(ids.size(), 0);

  const std::uint64_t n_subsets = std::uint64_t{1} << candidates.size();
  auto ids_of = [&](std::uint64_t mask) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mask >> i & 1U) out.push_back(candidates[i].id);
    }
    return out;
  };

  bool found = false;
  std::uint64_t best_mask = 0;
  double best_entropy = 0.0;
  Count best_tokens = 0;
  std::vector<Count> counts;
  for (std::uint64_t mask = 0; mask < n_subsets; ++mask) {
    Count tokens = initial.total();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mask >> i & 1U) tokens += doc_tokens[i];
    }
    if (tokens < target_size || tokens == 0) continue;
    counts = base;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!(mask >> i & 1U)) continue;
      for (const auto& [id, n] : docs[i]) counts[id] += n;
    }
    const double h = renyi_entropy(std::span<const Count>(counts), alpha);
    bool better = !found || h > best_entropy + kGainEpsilon;
    if (!better && found && std::fabs(h - best_entropy) <= kGainEpsilon) {
      better = tokens < best_tokens || (tokens == best_tokens && ids_of(mask) < ids_of(best_mask));
    }
    if (better) {
      found = true;
      best_mask = mask;
      best_entropy = h;
      best_tokens = tokens;
    }
  }

  BruteForceResult out;
  if (found) {
    out.selected = ids_of(best_mask);
    out.entropy = best_entropy;
    out.tokens_total = best_tokens;
    out.reached_target = true;
    return out;
  }
  const std::uint64_t all = n_subsets - 1;
  out.selected = ids_of(all);
  out.tokens_total = initial.total();
  counts = base;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.tokens_total += doc_tokens[i];
    for (const auto& [id, n] : docs[i]) counts[id] += n;
  }
  out.entropy = out.tokens_total > 0 ? renyi_entropy(std::span<const Count>(counts), alpha) : std::nan("");
  out.reached_target = false;
  return out;
}

std::string trajectory_csv(const SampleResult& result) {
  std::ostringstream out;
  out << "commit_index,doc_id,tokens_total,entropy\n";
  for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
    const auto& p = result.trajectory[i];
    out << i << ',' << csv_field(p.doc_id) << ',' << p.tokens_total << ',' << format_double(p.entropy) << '\n';
  }
  return out.str();
}

}  // namespace corpusdiv
