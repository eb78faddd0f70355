#include "corpusdiv/analysis.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <sstream>

#include "corpusdiv/error.hpp"
#include "corpusdiv/format.hpp"
#include "corpusdiv/numeric.hpp"

namespace corpusdiv {

std::vector<Block> block_split(std::size_t n_items, std::size_t block_size) {
  if (block_size == 0) throw ConfigError("block_size must be > 0");
  std::vector<Block> blocks;
  for (std::size_t begin = 0, k = 0; begin < n_items; begin += block_size, ++k) {
    const std::size_t end = std::min(n_items, begin + block_size);
    blocks.push_back({k, begin, end, end - begin < block_size});
  }
  return blocks;
}

namespace {

struct Moments {
  double n, m2, m3, m4;
};

Moments central_moments(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  const double n = static_cast<double>(xs.size());
  const double mean = s.value() / n;
  CompensatedSum s2, s3, s4;
  for (double x : xs) {
    const double d = x - mean;
    s2.add(d * d);
    s3.add(d * d * d);
    s4.add(d * d * d * d);
  }
  return {n, s2.value() / n, s3.value() / n, s4.value() / n};
}

double skew_z(const Moments& m) {
  const double n = m.n;
  const double b = m.m3 / std::pow(m.m2, 1.5);
  const double y = b * std::sqrt(((n + 1) * (n + 3)) / (6.0 * (n - 2)));
  const double beta2 = 3.0 * (n * n + 27 * n - 70) * (n + 1) * (n + 3) /
                       ((n - 2.0) * (n + 5) * (n + 7) * (n + 9));
  const double w2 = -1 + std::sqrt(2 * (beta2 - 1));
  const double delta = 1 / std::sqrt(0.5 * std::log(w2));
  const double alpha = std::sqrt(2.0 / (w2 - 1));
  return delta * std::asinh(y / alpha);
}

double kurtosis_z(const Moments& m) {
  const double n = m.n;
  const double b2 = m.m4 / (m.m2 * m.m2);
  const double expected = 3.0 * (n - 1) / (n + 1);
  const double var_b2 = 24.0 * n * (n - 2) * (n - 3) / ((n + 1) * (n + 1) * (n + 3) * (n + 5));
  const double x = (b2 - expected) / std::sqrt(var_b2);
  const double sqrt_beta1 = 6.0 * (n * n - 5 * n + 2) / ((n + 7) * (n + 9)) *
                            std::sqrt(6.0 * (n + 3) * (n + 5) / (n * (n - 2) * (n - 3)));
  const double a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
  const double term1 = 1 - 2 / (9.0 * a);
  const double denom = 1 + x * std::sqrt(2 / (a - 4.0));
  if (denom == 0.0) throw DomainError("kurtosis test undefined for this sample");
  const double term2 = std::copysign(std::cbrt((1 - 2.0 / a) / std::fabs(denom)), denom);
  return (term1 - term2) / std::sqrt(2 / (9.0 * a));
}

}  // namespace

NormalityResult normality_test(std::span<const double> samples) {
  if (samples.size() < 8) throw DomainError("normality test needs at least 8 samples");
  const auto m = central_moments(samples);
  if (!(m.m2 > 0.0)) throw DomainError("normality test undefined for zero variance");
  NormalityResult r;
  r.skew_z = skew_z(m);
  r.kurtosis_z = kurtosis_z(m);
  r.statistic = r.skew_z * r.skew_z + r.kurtosis_z * r.kurtosis_z;
  r.p_value = std::exp(-r.statistic / 2.0);
  return r;
}

BaselineDistribution BaselineDistribution::from_samples(std::vector<double> samples) {
  if (samples.size() < 8) throw DomainError("baseline distribution needs at least 8 samples");
  BaselineDistribution b;
  CompensatedSum s;
  for (double x : samples) s.add(x);
  const double n = static_cast<double>(samples.size());
  b.mean = s.value() / n;
  CompensatedSum ss;
  for (double x : samples) ss.add((x - b.mean) * (x - b.mean));
  b.stddev = std::sqrt(ss.value() / (n - 1));
  b.samples = std::move(samples);
  return b;
}

SigmaDistance sigma_distance(double value, double mean, double stddev) {
  if (!(stddev > 0.0)) throw DomainError("sigma_distance: baseline standard deviation must be > 0");
  SigmaDistance d;
  d.sigmas = (value - mean) / stddev;
  d.p_value = std::erfc(std::fabs(d.sigmas) / std::sqrt(2.0));
  if (d.p_value < DBL_MIN) {
    d.p_value = 0.0;
    d.underflow = true;
  }
  return d;
}

SigmaDistance sigma_distance(double value, const BaselineDistribution& baseline) {
  return sigma_distance(value, baseline.mean, baseline.stddev);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("pearson: need two equal-length series of length >= 2");
  const double n = static_cast<double>(x.size());
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx.add(x[i]);
    sy.add(y[i]);
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy.add(dx * dy);
    sxx.add(dx * dx);
    syy.add(dy * dy);
  }
  if (!(sxx.value() > 0.0) || !(syy.value() > 0.0)) throw DomainError("pearson: zero variance");
  const double r = sxy.value() / std::sqrt(sxx.value() * syy.value());
  return std::clamp(r, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("spearman: need two equal-length series of length >= 2");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

BlockProfile block_profile(std::span<const DependencySentence> sentences, const Block& block,
                           std::span<const AlphaOrder> alphas) {
  const auto slice = sentences.subspan(block.begin, block.size());
  BlockProfile p;
  p.block = block.index;
  p.partial = block.partial;
  p.lexical = diversity_profile(lexical_counts(slice), alphas);
  p.syntactic = diversity_profile(syntactic_counts(slice), alphas);
  return p;
}

std::vector<ClsdRow> clsd_report(std::span<const BlockProfile> profiles, bool include_partial) {
  std::vector<const BlockProfile*> used;
  for (const auto& p : profiles) {
    if (include_partial || !p.partial) used.push_back(&p);
  }
  if (used.size() < 3) throw DomainError("clsd_report needs at least 3 blocks");
  const auto& grid = used.front()->lexical.alphas;
  for (const auto* p : used) {
    if (p->lexical.alphas != grid || p->syntactic.alphas != grid) {
      throw DomainError("clsd_report: profiles use different alpha grids");
    }
  }
  std::vector<ClsdRow> rows;
  std::vector<double> lex(used.size()), syn(used.size());
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < used.size(); ++b) {
      lex[b] = used[b]->lexical.values[a];
      syn[b] = used[b]->syntactic.values[a];
    }
    ClsdRow row;
    row.alpha = grid[a].value();
    row.n_blocks = used.size();
    try {
      row.pearson = pearson(lex, syn);
      row.spearman = spearman(lex, syn);
    } catch (const DomainError&) {
      row.pearson = row.spearman = std::nan("");
    }
    rows.push_back(row);
  }
  return rows;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string clsd_csv(std::span<const ClsdRow> rows) {
  std::ostringstream out;
  out << "alpha,pearson,spearman,n_blocks\n";
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << format_double(r.pearson) << ',' << format_double(r.spearman) << ','
        << r.n_blocks << '\n';
  }
  return out.str();
}

std::string profiles_csv(std::span<const BlockProfile> profiles) {
  std::ostringstream out;
  out << "block,partial,alpha,lexical,syntactic\n";
  for (const auto& p : profiles) {
    for (std::size_t a = 0; a < p.lexical.alphas.size(); ++a) {
      out << p.block << ',' << (p.partial ? 1 : 0) << ',' << format_double(p.lexical.alphas[a].value()) << ','
          << format_double(p.lexical.values[a]) << ',' << format_double(p.syntactic.values[a]) << '\n';
    }
  }
  return out.str();
}

std::string baseline_csv(std::span<const std::uint64_t> seeds, const BaselineDistribution& baseline,
                         const std::optional<NormalityResult>& normality) {
  std::ostringstream out;
  out << "seed,entropy\n";
  for (std::size_t i = 0; i < seeds.size(); ++i) out << seeds[i] << ',' << format_double(baseline.samples[i]) << '\n';
  out << "# mean = " << format_double(baseline.mean) << '\n';
  out << "# stddev = " << format_double(baseline.stddev) << '\n';
  out << "# normality_statistic = " << format_double(normality ? normality->statistic : std::nan("")) << '\n';
  out << "# normality_p = " << format_double(normality ? normality->p_value : std::nan("")) << '\n';
  return out.str();
}

std::string significance_csv(double value, const SigmaDistance& d) {
  std::ostringstream out;
  out << "value,sigmas,p_value,underflow\n";
  out << format_double(value) << ',' << format_double(d.sigmas) << ',' << format_double(d.p_value) << ','
      << (d.underflow ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace corpusdiv
