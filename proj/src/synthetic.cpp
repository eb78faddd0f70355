#include "corpusdiv/synthetic.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <json.hpp>

#include "corpusdiv/error.hpp"

namespace corpusdiv::synthetic {

namespace {

constexpr std::array<const char*, 12> kTags = {"N", "V", "D", "A", "P", "PONCT", "ADV", "CC", "PRO", "CS", "VPP", "ET"};
constexpr std::array<const char*, 10> kRels = {"det", "suj", "obj", "mod", "ponct", "dep", "obj.p", "coord", "aux", "ats"};

}  // namespace

std::string word_for_rank(std::size_t rank) {
  std::string out;
  std::size_t n = rank + 1;
  while (n > 0) {
    --n;
    out += static_cast<char>('a' + n % 26);
    n /= 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Document> zipf_corpus(const ZipfCorpusSpec& spec) {
  if (spec.vocabulary == 0 || spec.min_length == 0 || spec.max_length < spec.min_length) {
    throw ConfigError("zipf_corpus: invalid spec");
  }
  std::vector<double> cdf(spec.vocabulary);
  double acc = 0.0;
  for (std::size_t r = 0; r < spec.vocabulary; ++r) {
    acc += 1.0 / static_cast<double>(r + 1);
    cdf[r] = acc;
  }
  std::vector<std::string> words(spec.vocabulary);
  for (std::size_t r = 0; r < spec.vocabulary; ++r) words[r] = word_for_rank(r);

  Rng rng(spec.seed);
  std::vector<Document> docs;
  docs.reserve(spec.documents);
  for (std::size_t d = 0; d < spec.documents; ++d) {
    const auto len = spec.min_length + rng.uniform_below(spec.max_length - spec.min_length + 1);
    Document doc;
    doc.id = spec.id_prefix + std::to_string(d);
    for (std::size_t t = 0; t < len; ++t) {
      const double u = rng.uniform01() * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const auto r = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), spec.vocabulary - 1);
      if (t) doc.text += ' ';
      doc.text += words[r];
    }
    doc.token_count = static_cast<Count>(len);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<DependencySentence> random_treebank(const TreebankSpec& spec) {
  if (spec.min_length == 0 || spec.max_length < spec.min_length || spec.pos_tags == 0 ||
      spec.pos_tags > kTags.size() || spec.deprels == 0 || spec.deprels > kRels.size() || spec.vocabulary == 0) {
    throw ConfigError("random_treebank: invalid spec");
  }
  Rng rng(spec.seed);
  std::vector<DependencySentence> out;
  out.reserve(spec.sentences);
  for (std::size_t s = 0; s < spec.sentences; ++s) {
    const auto n = spec.min_length + rng.uniform_below(spec.max_length - spec.min_length + 1);
    DependencySentence sentence;
    sentence.tokens.resize(n);
    // Attach nodes one by one, in random order, to an already attached node.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t k = 0; k < n; ++k) {
      auto& tok = sentence.tokens[order[k]];
      tok.index = static_cast<int>(order[k]) + 1;
      tok.head = k == 0 ? 0 : static_cast<int>(order[rng.uniform_below(k)]) + 1;
      tok.pos = kTags[rng.uniform_below(spec.pos_tags)];
      tok.deprel = k == 0 ? "root" : kRels[rng.uniform_below(spec.deprels)];
      tok.form = word_for_rank(rng.uniform_below(spec.vocabulary));
    }
    out.push_back(std::move(sentence));
  }
  return out;
}

std::string to_jsonl(std::span<const Document> docs) {
  std::string out;
  for (const auto& d : docs) {
    nlohmann::json j;
    j["id"] = d.id;
    j["text"] = d.text;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string to_conllu(std::span<const DependencySentence> sentences) {
  std::ostringstream out;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      out << t.index << '\t' << t.form << "\t_\t" << t.pos << '\t' << t.pos << "\t_\t" << t.head << '\t' << t.deprel
          << "\t_\t_\n";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace corpusdiv::synthetic
