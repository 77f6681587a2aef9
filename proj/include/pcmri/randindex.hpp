#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pcmri/completion.hpp"
#include "pcmri/graph_enum.hpp"

namespace pcmri {

enum class RIMode { kExact, kMonteCarlo };

std::string to_string(RIMode mode);

/// Graph-conditioned random index of one isomorphism class.
struct RIRecord {
  int n = 0;
  int m = 0;
  int graph_id = 0;
  EdgeCode canonical_code = 0;
  /// Mean CI of the optimally completed random matrices.
  double random_index = 0.0;
  /// Share of those matrices whose CI / random_index is acceptable.
  double acceptance_ratio = 0.0;
  std::uint64_t acceptable_count = 0;
  std::uint64_t sample_count = 0;
  RIMode mode = RIMode::kMonteCarlo;
  /// Meaningful for kMonteCarlo only.
  std::uint64_t seed = 0;
  double spectral_radius = 0.0;
  /// Sample standard deviation of CI.
  double ci_std = 0.0;

  std::string code_hex() const { return code_to_hex(n, canonical_code); }
  /// 3 * ci_std / sqrt(sample_count).
  double standard_error_band() const;

  friend bool operator==(const RIRecord&, const RIRecord&) = default;
};

/// How the random matrices of a class are produced.
struct Sampling {
  RIMode mode = RIMode::kMonteCarlo;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 42;

  static Sampling exact() { return {RIMode::kExact, 0, 0}; }
  static Sampling monte_carlo(std::uint64_t samples, std::uint64_t seed) {
    return {RIMode::kMonteCarlo, samples, seed};
  }
};

/// Serial runs the reference kernels; parallel runs the OpenMP ones.
enum class Execution { kSerial, kParallel };

/// Mean, sample standard deviation and acceptance statistics of a CI vector.
RIRecord summarize(const GraphClass& cls, std::span<const double> ci,
                   RIMode mode, std::uint64_t seed);

/// Averages CI over all 17^e assignments of Saaty values to the known
/// comparisons. Throws std::invalid_argument beyond 1e8 assignments.
RIRecord random_index_exact(const GraphClass& cls,
                            CompletionMethod method = CompletionMethod::saaty_bounded(),
                            Execution exec = Execution::kParallel);

/// Averages CI over `samples` random matrices (CounterRng streams
/// (seed, 0..samples-1)). Throws SampleError naming the failing sample.
RIRecord random_index_montecarlo(const GraphClass& cls, std::uint64_t samples,
                                 std::uint64_t seed,
                                 CompletionMethod method = CompletionMethod::saaty_bounded(),
                                 Execution exec = Execution::kParallel);

RIRecord random_index(const GraphClass& cls, const Sampling& sampling,
                      CompletionMethod method = CompletionMethod::saaty_bounded(),
                      Execution exec = Execution::kParallel);

/// Share of the class's random matrices whose CI / ri is acceptable.
/// Throws std::domain_error unless ri > 0.
double acceptance_ratio_for(const GraphClass& cls, double ri, const Sampling& sampling,
                            CompletionMethod method = CompletionMethod::saaty_bounded());

/// Probability-weighted mean of per-class random indices: the threshold
/// that ignores where the missing entries sit.
double naive_random_index(std::span<const double> random_indices,
                          std::span<const double> probabilities);

struct TableOptions {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 42;
  /// Draws for occurrence probabilities (m >= 3).
  std::uint64_t probability_samples = 1'000'000;
  CompletionMethod method = CompletionMethod::saaty_bounded();
  /// Classes with n at or below this use exact enumeration.
  int exact_max_n = 4;
  Execution exec = Execution::kParallel;
};

struct TableRow {
  GraphClass cls;
  double probability = 0.0;
  RIRecord record;
};

/// One row per class for every (n, m) pair, n outer, m inner; classes in
/// graph_id order. Pairs without connected graphs contribute no rows.
std::vector<TableRow> build_threshold_table(std::span<const int> n_values,
                                            std::span<const int> m_values,
                                            const TableOptions& options);

/// Header: n,m,graph_id,canonical_code,degree_sequence,spectral_radius,
/// probability,random_index,acceptance_ratio,ci_std,sample_count,mode,seed
void write_threshold_csv(std::ostream& out, std::span<const TableRow> rows);

/// Builds the table and writes it to output_path. Throws std::runtime_error
/// when the file cannot be written.
std::vector<TableRow> threshold_table(std::span<const int> n_values,
                                      std::span<const int> m_values,
                                      const TableOptions& options,
                                      const std::string& output_path);

/// Header: n,m,graph_id,canonical_code,degree_sequence,spectral_radius,
/// probability
void write_catalog_csv(std::ostream& out, const GraphFamily& family,
                       std::uint64_t probability_samples, std::uint64_t seed);

/// (spectral radius, RI) for m = 2 and n = 4..9.
std::vector<TableRow> figure_spectral_rows(const TableOptions& options);
/// (RI, acceptance ratio) for n = 5, m = 2..5 and n = 6, m = 2..7.
std::vector<TableRow> figure_acceptance_rows(const TableOptions& options);

/// Header: n,m,graph_id,canonical_code,spectral_radius,random_index
void write_spectral_figure_csv(std::ostream& out, std::span<const TableRow> rows);
/// Header: n,m,graph_id,canonical_code,random_index,acceptance_percent
void write_acceptance_figure_csv(std::ostream& out, std::span<const TableRow> rows);

}  // namespace pcmri
