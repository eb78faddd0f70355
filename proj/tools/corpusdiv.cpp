#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corpusdiv/analysis.hpp"
#include "corpusdiv/corpus_io.hpp"
#include "corpusdiv/counts.hpp"
#include "corpusdiv/entropy.hpp"
#include "corpusdiv/error.hpp"
#include "corpusdiv/format.hpp"
#include "corpusdiv/kernels.hpp"
#include "corpusdiv/normalize.hpp"
#include "corpusdiv/sampler.hpp"
#include "corpusdiv/syntax.hpp"

using namespace corpusdiv;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kMaxAlpha = 5.0;

enum Exit { kOk = 0, kInputError = 2, kConfigError = 3, kInternalError = 4 };

struct Common {
  int threads = 1;
  std::string normalizer_path;
  bool strict = false;
};

// Arguments as typed, minus --threads, so the manifest does not depend on it.
std::vector<std::string> recorded_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--threads=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

class Run {
 public:
  Run(std::string command, std::vector<std::string> args) {
    manifest_.command = std::move(command);
    manifest_.args = std::move(args);
    manifest_.version = kVersion;
  }

  void input(const std::string& path) {
    if (path.empty()) return;
    manifest_.input_digests.emplace_back(path, file_digest(path));
  }
  void seed(std::uint64_t s) { manifest_.seeds.push_back(s); }
  void fingerprint(std::string fp) { manifest_.normalizer_fingerprint = std::move(fp); }
  const RunManifest& manifest() const { return manifest_; }

  // Primary output plus its .run sidecar.
  void write(const std::string& path, const std::string& contents) const {
    write_file_locked(path, contents);
    write_file_locked(path + ".run", manifest_.render());
  }

 private:
  RunManifest manifest_;
};

Normalizer make_normalizer(const Common& common, Run& run) {
  auto cfg = common.normalizer_path.empty() ? NormalizerConfig::defaults() : NormalizerConfig::load(common.normalizer_path);
  run.input(common.normalizer_path);
  run.fingerprint(cfg.fingerprint());
  return Normalizer(cfg);
}

Strictness strictness(const Common& c) { return c.strict ? Strictness::strict : Strictness::lenient; }

void report_warnings(std::size_t warnings, const std::string& what) {
  if (warnings > 0) std::cerr << "corpusdiv: skipped " << warnings << " malformed " << what << "\n";
}

std::vector<AlphaOrder> parse_alphas(const std::vector<double>& raw) {
  std::vector<AlphaOrder> out;
  for (double a : raw) {
    if (!(a >= 0.0 && a <= kMaxAlpha)) {
      throw ConfigError("alpha must be in [0, " + format_double(kMaxAlpha) + "], got " + format_double(a));
    }
    out.emplace_back(a);
  }
  return out;
}

Execution exec_for(const Common& c) { return c.threads > 1 ? Execution::parallel : Execution::serial; }

CategoryCounts load_initial(const std::string& path) {
  return path.empty() ? CategoryCounts{} : read_count_table_file(path);
}

std::vector<Candidate> load_candidates(const std::string& path, const Normalizer& normalizer, const Common& common) {
  std::size_t warnings = 0;
  auto docs = read_documents(path, strictness(common), &warnings);
  report_warnings(warnings, "records");
  return prepare_candidates(docs, normalizer, exec_for(common));
}

std::vector<Count> parse_schedule(const std::string& text) {
  std::vector<Count> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ConfigError("bad exhaustivity value '" + item + "'");
    }
  }
  return out;
}

ConlluOptions conllu_options(const std::string& pos, const Common& common) {
  ConlluOptions o;
  o.pos = pos == "upos" ? PosColumn::upos : PosColumn::xpos;
  o.strict = common.strict;
  return o;
}

std::vector<DependencySentence> load_treebank(const std::string& path, const ConlluOptions& options) {
  auto parsed = parse_conllu_file(path, options);
  report_warnings(parsed.rejected, "sentences");
  return std::move(parsed.sentences);
}

// Flat `key = value` config: each key becomes --key=value right after the
// subcommand unless the command line already sets it.
std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& subcommands,
                                       std::string& config_path) {
  std::vector<std::string> in(argv + 1, argv + argc);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == "--config" && i + 1 < in.size()) {
      config_path = in[++i];
    } else if (in[i].rfind("--config=", 0) == 0) {
      config_path = in[i].substr(9);
    } else {
      out.push_back(in[i]);
    }
  }
  if (config_path.empty()) return out;
  if (!std::filesystem::exists(config_path)) throw InputError("cannot open config file " + config_path);

  auto given = [&](const std::string& key) {
    return std::any_of(out.begin(), out.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  for (const auto& item : CLI::ConfigINI().from_file(config_path)) {
    if (!item.parents.empty() || item.name.empty() || item.name == "++" || item.name == "--") continue;
    if (given(item.name)) continue;
    std::string value;
    for (std::size_t k = 0; k < item.inputs.size(); ++k) value += (k ? "," : "") + item.inputs[k];
    extra.push_back("--" + item.name + "=" + value);
  }
  auto sub = std::find_if(out.begin(), out.end(), [&](const std::string& a) {
    return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
  });
  if (sub == out.end()) return out;
  out.insert(sub + 1, extra.begin(), extra.end());
  return out;
}

void add_common(CLI::App* sub, Common& common, bool text_input) {
  sub->add_option("--config", "flat key = value file; flags on the command line win");
  sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  if (text_input) sub->add_option("--normalizer", common.normalizer_path, "normalizer config file");
  sub->add_flag("--strict", common.strict, "abort on malformed input");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus diversity measurement and entropy-driven sampling", "corpusdiv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  const auto args = recorded_args(argc, argv);
  Common common;

  // tokenize
  std::string tok_in, tok_out;
  auto* tokenize = app.add_subcommand("tokenize", "normalize a JSONL corpus and write its token count table");
  add_common(tokenize, common, true);
  tokenize->add_option("--input", tok_in, "corpus (JSONL)")->required();
  tokenize->add_option("--output", tok_out, "count table (TSV)")->required();

  // entropy
  std::string ent_in, ent_out;
  std::vector<double> ent_alphas;
  bool ent_grid = false;
  auto* entropy = app.add_subcommand("entropy", "Renyi entropy profile of a count table");
  add_common(entropy, common, false);
  entropy->add_option("--input", ent_in, "count table (TSV)")->required();
  entropy->add_option("--output", ent_out, "profile CSV")->required();
  entropy->add_option("--alphas", ent_alphas, "orders, comma separated")->delimiter(',');
  entropy->add_flag("--grid", ent_grid, "use the 0..5 step 0.1 grid");

  // sample
  std::string smp_initial, smp_cands, smp_out, smp_traj, smp_sched = "1000,100,10,1";
  Count smp_target = 0;
  std::optional<std::uint64_t> smp_seed;
  auto* sample = app.add_subcommand("sample", "entropy-driven document selection");
  add_common(sample, common, true);
  sample->add_option("--initial", smp_initial, "initial corpus count table (TSV)");
  sample->add_option("--candidates", smp_cands, "candidate documents (JSONL)")->required();
  sample->add_option("--target-tokens", smp_target, "stop once the sample holds this many tokens")->required();
  sample->add_option("--exhaustivity", smp_sched, "decreasing schedule, comma separated");
  sample->add_option("--seed", smp_seed, "shuffle candidate order with this seed");
  sample->add_option("--output", smp_out, "sample manifest")->required();
  sample->add_option("--trajectory", smp_traj, "trajectory CSV");

  // baseline
  std::string bl_initial, bl_cands, bl_out, bl_sig, bl_compare_manifest;
  Count bl_target = 0;
  std::uint64_t bl_seed = 0;
  int bl_runs = 20;
  std::optional<double> bl_compare_value;
  auto* baseline = app.add_subcommand("baseline", "seeded random samples and their entropy distribution");
  add_common(baseline, common, true);
  baseline->add_option("--initial", bl_initial, "initial corpus count table (TSV)");
  baseline->add_option("--candidates", bl_cands, "candidate documents (JSONL)")->required();
  baseline->add_option("--target-tokens", bl_target, "tokens per random sample")->required();
  baseline->add_option("--seed", bl_seed, "first seed; run i uses seed + i")->required();
  baseline->add_option("--runs", bl_runs, "number of random samples")->check(CLI::Range(8, 100000));
  baseline->add_option("--output", bl_out, "baseline CSV")->required();
  auto* cmp_v = baseline->add_option("--compare-value", bl_compare_value, "entropy to test against the baseline");
  auto* cmp_m =
      baseline->add_option("--compare-manifest", bl_compare_manifest, "sample manifest whose final_entropy is tested");
  cmp_v->excludes(cmp_m);
  baseline->add_option("--significance", bl_sig, "significance CSV");

  // syntax
  std::string syn_in, syn_out, syn_lex, syn_pos = "xpos";
  auto* syntax = app.add_subcommand("syntax", "subtree count table of a CoNLL-U treebank");
  add_common(syntax, common, false);
  syntax->add_option("--input", syn_in, "treebank (CoNLL-U)")->required();
  syntax->add_option("--output", syn_out, "subtree count table (TSV)")->required();
  syntax->add_option("--lexical", syn_lex, "also write the word-form count table");
  syntax->add_option("--pos", syn_pos, "POS column")->check(CLI::IsMember({"upos", "xpos"}));

  // correlate
  std::string cor_in, cor_out, cor_profiles, cor_pos = "xpos";
  std::size_t cor_block = 0;
  bool cor_partial = false;
  double cor_max = kMaxAlpha, cor_step = 0.1;
  auto* correlate = app.add_subcommand("correlate", "lexical/syntactic correlation across blocks");
  add_common(correlate, common, false);
  correlate->add_option("--input", cor_in, "treebank (CoNLL-U)")->required();
  correlate->add_option("--block-size", cor_block, "sentences per block")->required();
  correlate->add_option("--output", cor_out, "correlation CSV")->required();
  correlate->add_option("--profiles", cor_profiles, "per-block profile CSV");
  correlate->add_flag("--include-partial", cor_partial, "keep a short final block");
  correlate->add_option("--alpha-max", cor_max, "largest order");
  correlate->add_option("--alpha-step", cor_step, "grid step");
  correlate->add_option("--pos", cor_pos, "POS column")->check(CLI::IsMember({"upos", "xpos"}));

  std::string config_path;
  try {
    std::vector<std::string> names;
    for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) names.push_back(sub->get_name());
    auto expanded = expand_config(argc, argv, names, config_path);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const InputError& e) {
    std::cerr << "corpusdiv: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const CLI::FileError& e) {
    std::cerr << "corpusdiv: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    set_thread_count(common.threads);
    const auto exec = exec_for(common);
    const std::string name = app.get_subcommands().front()->get_name();
    Run run(name, args);
    run.input(config_path);

    if (name == "tokenize") {
      const auto normalizer = make_normalizer(common, run);
      run.input(tok_in);
      CorpusReader reader(tok_in, strictness(common));
      CategoryCounts counts;
      std::vector<Document> batch;
      auto flush = [&] {
        for (const auto& seq : normalize_documents(exec, normalizer, batch)) counts.add(token_counts(seq));
        batch.clear();
      };
      while (auto doc = reader.next()) {
        batch.push_back(std::move(*doc));
        if (batch.size() == 4096) flush();
      }
      flush();
      report_warnings(reader.warnings(), "records");
      run.write(tok_out, count_table_string(counts));

    } else if (name == "entropy") {
      if (ent_grid == !ent_alphas.empty()) throw ConfigError("give exactly one of --alphas or --grid");
      const auto alphas = ent_grid ? alpha_grid() : parse_alphas(ent_alphas);
      run.input(ent_in);
      const auto counts = read_count_table_file(ent_in);
      const auto profile = diversity_profile(counts, alphas);
      std::string csv = "alpha,entropy\n";
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        csv += format_double(alphas[i].value()) + "," + format_double(profile.values[i]) + "\n";
      }
      run.write(ent_out, csv);

    } else if (name == "sample") {
      SamplerConfig cfg;
      cfg.target_size = smp_target;
      cfg.exhaustivity = parse_schedule(smp_sched);
      cfg.seed = smp_seed;
      cfg.validate();
      const auto normalizer = make_normalizer(common, run);
      run.input(smp_initial);
      run.input(smp_cands);
      if (smp_seed) run.seed(*smp_seed);
      const auto initial = load_initial(smp_initial);
      const auto cands = load_candidates(smp_cands, normalizer, common);
      const auto result = heuristic_sample(initial, cands, cfg, exec);

      std::vector<std::pair<std::string, std::string>> footer = {
          {"final_entropy", format_double(result.final_entropy)},
          {"tokens_total", std::to_string(result.tokens_total)},
          {"reached_target", result.reached_target ? "true" : "false"},
          {"selected", std::to_string(result.selected.size())},
      };
      for (const auto& lvl : result.exhaustivity_used) {
        footer.emplace_back("commits_at_" + std::to_string(lvl.exhaustivity), std::to_string(lvl.commits));
      }
      std::string text = render_sample_manifest(result.selected, footer);
      text += run.manifest().render("# ");
      run.write(smp_out, text);
      if (!smp_traj.empty()) run.write(smp_traj, trajectory_csv(result));
      if (!result.reached_target) std::cerr << "corpusdiv: candidates exhausted before the target size\n";

    } else if (name == "baseline") {
      const auto normalizer = make_normalizer(common, run);
      run.input(bl_initial);
      run.input(bl_cands);
      run.input(bl_compare_manifest);
      const auto initial = load_initial(bl_initial);
      const auto cands = load_candidates(bl_cands, normalizer, common);
      std::vector<std::uint64_t> seeds;
      std::vector<double> values;
      bool short_run = false;
      for (int i = 0; i < bl_runs; ++i) {
        const std::uint64_t s = bl_seed + static_cast<std::uint64_t>(i);
        const auto r = random_sample(initial, cands, bl_target, s);
        if (r.selected.empty() && initial.empty()) throw InputError("random sample is empty");
        short_run = short_run || !r.reached_target;
        seeds.push_back(s);
        values.push_back(r.final_entropy);
        run.seed(s);
      }
      if (short_run) std::cerr << "corpusdiv: candidates exhausted before the target size\n";
      const auto dist = BaselineDistribution::from_samples(values);
      std::optional<NormalityResult> normality;
      try {
        normality = normality_test(dist.samples);
      } catch (const DomainError& e) {
        std::cerr << "corpusdiv: " << e.what() << "\n";
      }
      run.write(bl_out, baseline_csv(seeds, dist, normality));

      std::optional<double> compare = bl_compare_value;
      if (!bl_compare_manifest.empty()) {
        std::ifstream in(bl_compare_manifest);
        if (!in) throw InputError("cannot open " + bl_compare_manifest);
        for (const auto& [k, v] : parse_sample_manifest(in).second) {
          if (k == "final_entropy") compare = std::stod(v);
        }
        if (!compare) throw InputError(bl_compare_manifest + " has no final_entropy");
      }
      if (compare) {
        const auto d = sigma_distance(*compare, dist);
        const auto csv = significance_csv(*compare, d);
        if (bl_sig.empty()) {
          std::cout << csv;
        } else {
          run.write(bl_sig, csv);
        }
      }

    } else if (name == "syntax") {
      run.input(syn_in);
      const auto bank = load_treebank(syn_in, conllu_options(syn_pos, common));
      run.write(syn_out, count_table_string(syntactic_counts(exec, bank)));
      if (!syn_lex.empty()) run.write(syn_lex, count_table_string(lexical_counts(bank)));

    } else if (name == "correlate") {
      if (cor_block == 0) throw ConfigError("--block-size must be > 0");
      if (!(cor_max >= 0.0 && cor_max <= kMaxAlpha)) throw ConfigError("--alpha-max must be in [0, 5]");
      if (!(cor_step > 0.0)) throw ConfigError("--alpha-step must be > 0");
      run.input(cor_in);
      const auto bank = load_treebank(cor_in, conllu_options(cor_pos, common));
      const auto blocks = block_split(bank.size(), cor_block);
      const auto alphas = alpha_grid(cor_max, cor_step);
      const auto profiles = block_profiles(exec, bank, blocks, alphas);
      run.write(cor_out, clsd_csv(clsd_report(profiles, cor_partial)));
      if (!cor_profiles.empty()) run.write(cor_profiles, profiles_csv(profiles));
    }
    return kOk;
  } catch (const InputError& e) {
    std::cerr << "corpusdiv: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "corpusdiv: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "corpusdiv: configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "corpusdiv: internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
