#include <benchmark/benchmark.h>

#include <numeric>

#include "corpusdiv/kernels.hpp"
#include "corpusdiv/sampler.hpp"
#include "corpusdiv/synthetic.hpp"

using namespace corpusdiv;

namespace {

const std::vector<Document>& corpus() {
  static const auto docs = [] {
    synthetic::ZipfCorpusSpec spec;
    spec.documents = 5000;
    return synthetic::zipf_corpus(spec);
  }();
  return docs;
}

const std::vector<DependencySentence>& bank() {
  static const auto b = [] {
    synthetic::TreebankSpec spec;
    spec.sentences = 20000;
    spec.max_length = 30;
    return synthetic::random_treebank(spec);
  }();
  return b;
}

struct GainSetup {
  EntropyAccumulator acc{{AlphaOrder(2)}};
  std::vector<SparseDelta> deltas;
  std::vector<std::size_t> indices;

  GainSetup() {
    const Normalizer n;
    const auto seqs = kernels::normalize_serial(n, corpus());
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      if (i < 1000) {
        acc.apply_delta(token_counts(seqs[i]));
      } else {
        deltas.push_back(acc.intern(token_counts(seqs[i])));
      }
    }
    indices.resize(deltas.size());
    std::iota(indices.begin(), indices.end(), 0);
  }
};

const GainSetup& gains() {
  static const GainSetup g;
  return g;
}

template <bool Parallel>
void BM_Gains(benchmark::State& state) {
  set_thread_count(static_cast<int>(state.range(0)));
  const auto& g = gains();
  std::vector<double> out(g.indices.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::evaluate_gains_omp(g.acc, g.deltas, g.indices, AlphaOrder(1), out);
    } else {
      kernels::evaluate_gains_serial(g.acc, g.deltas, g.indices, AlphaOrder(1), out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

template <bool Parallel>
void BM_Normalize(benchmark::State& state) {
  set_thread_count(static_cast<int>(state.range(0)));
  const Normalizer n;
  for (auto _ : state) {
    auto seqs = Parallel ? kernels::normalize_omp(n, corpus()) : kernels::normalize_serial(n, corpus());
    benchmark::DoNotOptimize(seqs.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}

template <bool Parallel>
void BM_Subtrees(benchmark::State& state) {
  set_thread_count(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto c = Parallel ? kernels::subtree_counts_omp(bank()) : kernels::subtree_counts_serial(bank());
    benchmark::DoNotOptimize(c.total());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bank().size()));
}

template <bool Parallel>
void BM_BlockProfiles(benchmark::State& state) {
  set_thread_count(static_cast<int>(state.range(0)));
  const auto blocks = block_split(bank().size(), 500);
  const auto alphas = alpha_grid();
  for (auto _ : state) {
    auto p = Parallel ? kernels::block_profiles_omp(bank(), blocks, alphas)
                      : kernels::block_profiles_serial(bank(), blocks, alphas);
    benchmark::DoNotOptimize(p.data());
  }
}

void BM_Sampler(benchmark::State& state) {
  set_thread_count(static_cast<int>(state.range(0)));
  auto docs = corpus();
  const auto cands = prepare_candidates(docs, Normalizer{});
  SamplerConfig cfg;
  cfg.target_size = 100000;
  cfg.exhaustivity = {100, 10, 1};
  const auto exec = state.range(0) > 1 ? Execution::parallel : Execution::serial;
  for (auto _ : state) {
    auto r = heuristic_sample({}, cands, cfg, exec);
    benchmark::DoNotOptimize(r.final_entropy);
  }
}

}  // namespace

BENCHMARK(BM_Gains<false>)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Gains<true>)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Normalize<false>)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Normalize<true>)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Subtrees<false>)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Subtrees<true>)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BlockProfiles<false>)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BlockProfiles<true>)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sampler)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
