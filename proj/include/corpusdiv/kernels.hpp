#pragma once

// Data-parallel hot loops. Every kernel has a serial reference and an
// OpenMP version; both must produce identical results for any thread count.

#include <span>
#include <vector>

#include "corpusdiv/accumulator.hpp"
#include "corpusdiv/analysis.hpp"
#include "corpusdiv/corpus_io.hpp"
#include "corpusdiv/normalize.hpp"
#include "corpusdiv/syntax.hpp"

namespace corpusdiv {

enum class Execution { serial, parallel };

void set_thread_count(int threads);
int thread_count();

namespace kernels {

// out[k] = acc.entropy_gain(deltas[indices[k]], alpha); -inf for empty deltas.
void evaluate_gains_serial(const EntropyAccumulator& acc, std::span<const SparseDelta> deltas,
                           std::span<const std::size_t> indices, AlphaOrder alpha, std::span<double> out);
void evaluate_gains_omp(const EntropyAccumulator& acc, std::span<const SparseDelta> deltas,
                        std::span<const std::size_t> indices, AlphaOrder alpha, std::span<double> out);

std::vector<TokenSequence> normalize_serial(const Normalizer& normalizer, std::span<const Document> docs);
std::vector<TokenSequence> normalize_omp(const Normalizer& normalizer, std::span<const Document> docs);

CategoryCounts subtree_counts_serial(std::span<const DependencySentence> sentences);
CategoryCounts subtree_counts_omp(std::span<const DependencySentence> sentences);

std::vector<BlockProfile> block_profiles_serial(std::span<const DependencySentence> sentences,
                                                std::span<const Block> blocks, std::span<const AlphaOrder> alphas);
std::vector<BlockProfile> block_profiles_omp(std::span<const DependencySentence> sentences,
                                             std::span<const Block> blocks, std::span<const AlphaOrder> alphas);

}  // namespace kernels

void evaluate_gains(Execution exec, const EntropyAccumulator& acc, std::span<const SparseDelta> deltas,
                    std::span<const std::size_t> indices, AlphaOrder alpha, std::span<double> out);
std::vector<TokenSequence> normalize_documents(Execution exec, const Normalizer& normalizer,
                                               std::span<const Document> docs);
CategoryCounts syntactic_counts(Execution exec, std::span<const DependencySentence> sentences);
std::vector<BlockProfile> block_profiles(Execution exec, std::span<const DependencySentence> sentences,
                                         std::span<const Block> blocks, std::span<const AlphaOrder> alphas);

}  // namespace corpusdiv
