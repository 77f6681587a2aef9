#include "pcmri/randindex.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "pcmri/kernels.hpp"
#include "pcmri/spectral.hpp"

namespace pcmri {

namespace {

constexpr double kExactLimit = 1e8;

std::vector<double> exact_ci(const GraphClass& cls, CompletionMethod method,
                             Execution exec) {
  const double total = std::pow(17.0, pair_count(cls.n) - cls.m);
  if (total > kExactLimit)
    throw std::invalid_argument("exact enumeration exceeds 1e8 completions");
  return exec == Execution::kSerial ? kernels::enumerated_ci_serial(cls, method)
                                    : kernels::enumerated_ci_parallel(cls, method);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string to_string(RIMode mode) {
  return mode == RIMode::kExact ? "EXACT" : "MONTE_CARLO";
}

double RIRecord::standard_error_band() const {
  if (sample_count == 0) return 0.0;
  return 3.0 * ci_std / std::sqrt(static_cast<double>(sample_count));
}

RIRecord summarize(const GraphClass& cls, std::span<const double> ci, RIMode mode,
                   std::uint64_t seed) {
  if (ci.empty()) throw std::invalid_argument("no CI values to summarize");
  RIRecord r;
  r.n = cls.n;
  r.m = cls.m;
  r.graph_id = cls.graph_id;
  r.canonical_code = cls.canonical_code;
  r.spectral_radius = cls.spectral_radius;
  r.mode = mode;
  r.seed = mode == RIMode::kMonteCarlo ? seed : 0;
  r.sample_count = ci.size();

  const double count = static_cast<double>(ci.size());
  r.random_index = pairwise_sum(ci) / count;
  if (ci.size() > 1) {
    std::vector<double> sq(ci.size());
    for (std::size_t k = 0; k < ci.size(); ++k) {
      const double d = ci[k] - r.random_index;
      sq[k] = d * d;
    }
    r.ci_std = std::sqrt(pairwise_sum(sq) / (count - 1.0));
  }

  // A tree always completes consistently, so its random index is zero up to
  // optimizer noise and every matrix counts as acceptable.
  if (r.random_index > 1e-9)
    r.acceptable_count = kernels::count_acceptable_parallel(ci, r.random_index);
  else
    r.acceptable_count = r.sample_count;
  r.acceptance_ratio = static_cast<double>(r.acceptable_count) / count;
  return r;
}

RIRecord random_index_exact(const GraphClass& cls, CompletionMethod method,
                            Execution exec) {
  const auto ci = exact_ci(cls, method, exec);
  return summarize(cls, ci, RIMode::kExact, 0);
}

RIRecord random_index_montecarlo(const GraphClass& cls, std::uint64_t samples,
                                 std::uint64_t seed, CompletionMethod method,
                                 Execution exec) {
  if (samples == 0) throw std::invalid_argument("samples must be at least 1");
  const auto ci = exec == Execution::kSerial
                      ? kernels::sampled_ci_serial(cls, method, seed, samples)
                      : kernels::sampled_ci_parallel(cls, method, seed, samples);
  return summarize(cls, ci, RIMode::kMonteCarlo, seed);
}

RIRecord random_index(const GraphClass& cls, const Sampling& sampling,
                      CompletionMethod method, Execution exec) {
  if (sampling.mode == RIMode::kExact) return random_index_exact(cls, method, exec);
  return random_index_montecarlo(cls, sampling.samples, sampling.seed, method, exec);
}

double acceptance_ratio_for(const GraphClass& cls, double ri, const Sampling& sampling,
                            CompletionMethod method) {
  if (!(ri > 0.0)) throw std::domain_error("random index must be positive");
  std::vector<double> ci;
  if (sampling.mode == RIMode::kExact) {
    ci = exact_ci(cls, method, Execution::kParallel);
  } else {
    if (sampling.samples == 0) throw std::invalid_argument("samples must be at least 1");
    ci = kernels::sampled_ci_parallel(cls, method, sampling.seed, sampling.samples);
  }
  return static_cast<double>(kernels::count_acceptable_parallel(ci, ri)) /
         static_cast<double>(ci.size());
}

double naive_random_index(std::span<const double> random_indices,
                          std::span<const double> probabilities) {
  if (random_indices.size() != probabilities.size() || random_indices.empty())
    throw std::invalid_argument("need one probability per random index");
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < random_indices.size(); ++k) {
    weighted += probabilities[k] * random_indices[k];
    total += probabilities[k];
  }
  if (!(total > 0.0)) throw std::invalid_argument("probabilities sum to zero");
  return weighted / total;
}

std::vector<TableRow> build_threshold_table(std::span<const int> n_values,
                                            std::span<const int> m_values,
                                            const TableOptions& options) {
  std::vector<TableRow> rows;
  for (int n : n_values) {
    for (int m : m_values) {
      const GraphFamily family = GraphFamily::enumerate(n, m);
      if (family.classes().empty()) continue;
      const auto probabilities =
          occurrence_probabilities(family, options.probability_samples, options.seed);
      for (std::size_t c = 0; c < family.classes().size(); ++c) {
        const GraphClass& cls = family.classes()[c];
        const Sampling sampling = n <= options.exact_max_n
                                      ? Sampling::exact()
                                      : Sampling::monte_carlo(options.samples, options.seed);
        rows.push_back({cls, probabilities[c],
                        random_index(cls, sampling, options.method, options.exec)});
      }
    }
  }
  return rows;
}

void write_threshold_csv(std::ostream& out, std::span<const TableRow> rows) {
  out << "n,m,graph_id,canonical_code,degree_sequence,spectral_radius,probability,"
         "random_index,acceptance_ratio,ci_std,sample_count,mode,seed\n";
  for (const TableRow& row : rows) {
    const RIRecord& r = row.record;
    out << r.n << ',' << r.m << ',' << r.graph_id << ',' << r.code_hex() << ",\""
        << format_degree_sequence(row.cls.degree_sequence) << "\","
        << fixed(row.cls.spectral_radius, 7) << ',' << fixed(row.probability, 6) << ','
        << fixed(r.random_index, 7) << ',' << fixed(r.acceptance_ratio, 6) << ','
        << fixed(r.ci_std, 7) << ',' << r.sample_count << ',' << to_string(r.mode) << ',';
    if (r.mode == RIMode::kMonteCarlo) out << r.seed;
    out << '\n';
  }
}

std::vector<TableRow> threshold_table(std::span<const int> n_values,
                                      std::span<const int> m_values,
                                      const TableOptions& options,
                                      const std::string& output_path) {
  auto rows = build_threshold_table(n_values, m_values, options);
  std::ofstream file(output_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + output_path + " for writing");
  write_threshold_csv(file, rows);
  file.flush();
  if (!file) throw std::runtime_error("failed writing " + output_path);
  return rows;
}

void write_catalog_csv(std::ostream& out, const GraphFamily& family,
                       std::uint64_t probability_samples, std::uint64_t seed) {
  out << "n,m,graph_id,canonical_code,degree_sequence,spectral_radius,probability\n";
  if (family.classes().empty()) return;
  const auto probabilities = occurrence_probabilities(family, probability_samples, seed);
  for (std::size_t c = 0; c < family.classes().size(); ++c) {
    const GraphClass& cls = family.classes()[c];
    out << cls.n << ',' << cls.m << ',' << cls.graph_id << ',' << cls.code_hex() << ",\""
        << format_degree_sequence(cls.degree_sequence) << "\","
        << fixed(cls.spectral_radius, 7) << ',' << fixed(probabilities[c], 6) << '\n';
  }
}

std::vector<TableRow> figure_spectral_rows(const TableOptions& options) {
  const std::vector<int> ns{4, 5, 6, 7, 8, 9};
  const std::vector<int> ms{2};
  return build_threshold_table(ns, ms, options);
}

std::vector<TableRow> figure_acceptance_rows(const TableOptions& options) {
  auto rows = build_threshold_table(std::vector<int>{5}, std::vector<int>{2, 3, 4, 5},
                                    options);
  auto six = build_threshold_table(std::vector<int>{6},
                                   std::vector<int>{2, 3, 4, 5, 6, 7}, options);
  rows.insert(rows.end(), six.begin(), six.end());
  return rows;
}

void write_spectral_figure_csv(std::ostream& out, std::span<const TableRow> rows) {
  out << "n,m,graph_id,canonical_code,spectral_radius,random_index\n";
  for (const TableRow& row : rows)
    out << row.cls.n << ',' << row.cls.m << ',' << row.cls.graph_id << ','
        << row.cls.code_hex() << ',' << fixed(row.cls.spectral_radius, 7) << ','
        << fixed(row.record.random_index, 7) << '\n';
}

void write_acceptance_figure_csv(std::ostream& out, std::span<const TableRow> rows) {
  out << "n,m,graph_id,canonical_code,random_index,acceptance_percent\n";
  for (const TableRow& row : rows)
    out << row.cls.n << ',' << row.cls.m << ',' << row.cls.graph_id << ','
        << row.cls.code_hex() << ',' << fixed(row.record.random_index, 7) << ','
        << fixed(100.0 * row.record.acceptance_ratio, 4) << '\n';
}

}  // namespace pcmri
