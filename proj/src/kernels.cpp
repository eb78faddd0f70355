#include "corpusdiv/kernels.hpp"

#include <omp.h>

#include <cstdint>
#include <exception>
#include <limits>

namespace corpusdiv {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace kernels {

namespace {

double gain_or_floor(const EntropyAccumulator& acc, const SparseDelta& delta, AlphaOrder alpha) {
  if (delta.empty()) return -std::numeric_limits<double>::infinity();
  return acc.entropy_gain(delta, alpha);
}

}  // namespace

void evaluate_gains_serial(const EntropyAccumulator& acc, std::span<const SparseDelta> deltas,
                           std::span<const std::size_t> indices, AlphaOrder alpha, std::span<double> out) {
  for (std::size_t k = 0; k < indices.size(); ++k) out[k] = gain_or_floor(acc, deltas[indices[k]], alpha);
}

void evaluate_gains_omp(const EntropyAccumulator& acc, std::span<const SparseDelta> deltas,
                        std::span<const std::size_t> indices, AlphaOrder alpha, std::span<double> out) {
  // The only throwing path is an untracked order; reject it before the region.
  if (!acc.tracks(alpha)) (void)acc.power_sum(alpha);
  const auto n = static_cast<std::int64_t>(indices.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = gain_or_floor(acc, deltas[indices[static_cast<std::size_t>(k)]], alpha);
  }
}

std::vector<TokenSequence> normalize_serial(const Normalizer& normalizer, std::span<const Document> docs) {
  std::vector<TokenSequence> out(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) out[i] = normalizer.normalize(docs[i].text);
  return out;
}

std::vector<TokenSequence> normalize_omp(const Normalizer& normalizer, std::span<const Document> docs) {
  std::vector<TokenSequence> out(docs.size());
  const auto n = static_cast<std::int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = normalizer.normalize(docs[static_cast<std::size_t>(i)].text);
  }
  return out;
}

CategoryCounts subtree_counts_serial(std::span<const DependencySentence> sentences) {
  return syntactic_counts(sentences);
}

CategoryCounts subtree_counts_omp(std::span<const DependencySentence> sentences) {
  std::vector<CategoryCounts> partial(static_cast<std::size_t>(omp_get_max_threads()));
  const auto n = static_cast<std::int64_t>(sentences.size());
#pragma omp parallel
  {
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) mine.add(extract_subtrees(sentences[static_cast<std::size_t>(i)]));
  }
  CategoryCounts total;
  for (const auto& p : partial) total.add(p);
  return total;
}

std::vector<BlockProfile> block_profiles_serial(std::span<const DependencySentence> sentences,
                                                std::span<const Block> blocks, std::span<const AlphaOrder> alphas) {
  std::vector<BlockProfile> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(block_profile(sentences, b, alphas));
  return out;
}

std::vector<BlockProfile> block_profiles_omp(std::span<const DependencySentence> sentences,
                                             std::span<const Block> blocks, std::span<const AlphaOrder> alphas) {
  std::vector<BlockProfile> out(blocks.size());
  std::exception_ptr error;
  const auto n = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = block_profile(sentences, blocks[static_cast<std::size_t>(i)], alphas);
    } catch (...) {
#pragma omp critical(corpusdiv_block_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace kernels

void evaluate_gains(Execution exec, const EntropyAccumulator& acc, std::span<const SparseDelta> deltas,
                    std::span<const std::size_t> indices, AlphaOrder alpha, std::span<double> out) {
  if (exec == Execution::parallel) {
    kernels::evaluate_gains_omp(acc, deltas, indices, alpha, out);
  } else {
    kernels::evaluate_gains_serial(acc, deltas, indices, alpha, out);
  }
}

std::vector<TokenSequence> normalize_documents(Execution exec, const Normalizer& normalizer,
                                               std::span<const Document> docs) {
  return exec == Execution::parallel ? kernels::normalize_omp(normalizer, docs)
                                     : kernels::normalize_serial(normalizer, docs);
}

CategoryCounts syntactic_counts(Execution exec, std::span<const DependencySentence> sentences) {
  return exec == Execution::parallel ? kernels::subtree_counts_omp(sentences)
                                     : kernels::subtree_counts_serial(sentences);
}

std::vector<BlockProfile> block_profiles(Execution exec, std::span<const DependencySentence> sentences,
                                         std::span<const Block> blocks, std::span<const AlphaOrder> alphas) {
  return exec == Execution::parallel ? kernels::block_profiles_omp(sentences, blocks, alphas)
                                     : kernels::block_profiles_serial(sentences, blocks, alphas);
}

}  // namespace corpusdiv
