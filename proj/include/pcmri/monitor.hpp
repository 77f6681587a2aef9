#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcmri/completion.hpp"
#include "pcmri/graph_enum.hpp"
#include "pcmri/pcm.hpp"
#include "pcmri/randindex.hpp"

// Live consistency monitoring: comparisons arrive one at a time and every
// change is answered with the verdict against the threshold of the current
// comparison graph.

namespace pcmri {

/// Maps to HTTP 404.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps to HTTP 400.
class BadRequestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MonitorConfig {
  std::uint64_t samples = 20'000;
  std::uint64_t seed = 42;
  CompletionMethod method = CompletionMethod::saaty_bounded();
  /// Classes with n <= exact_max_n and at most exact_limit assignments are
  /// enumerated exactly; everything else is sampled.
  int exact_max_n = 4;
  std::uint64_t exact_limit = 83'521;
  /// Families with at most this many missing-edge subsets are enumerated to
  /// give graph_id; larger ones report no id.
  double graph_id_limit = 1e5;
  /// Naive (placement-averaged) RI is reported for n up to this order.
  int naive_max_n = 4;
  /// Append-only journal; empty disables journaling.
  std::string journal_path;
};

enum class Verdict { kAcceptable, kUnacceptable, kNotEvaluable };
std::string to_string(Verdict verdict);

/// Triangle of known comparisons with error |ln(a_ij a_jk / a_ik)|.
/// Ranking by this error is a heuristic for locating misprints.
struct SuspectTriad {
  int i = 0;
  int j = 0;
  int k = 0;
  double error = 0.0;
  friend bool operator==(const SuspectTriad&, const SuspectTriad&) = default;
};

struct StatusReport {
  int n = 0;
  int m = 0;
  bool connected = false;
  std::optional<int> graph_id;
  std::optional<std::string> canonical_code;
  double spectral_radius = 0.0;
  std::optional<double> lambda_star;
  std::optional<double> ci;
  std::optional<double> ri;
  std::optional<double> cr;
  std::optional<double> naive_ri;
  Verdict verdict = Verdict::kNotEvaluable;
  std::vector<SuspectTriad> suspect_triads;

  friend bool operator==(const StatusReport&, const StatusReport&) = default;
};

/// Triads with error above 1e-9, largest first, at most `limit`.
std::vector<SuspectTriad> suspect_triads(const IncompletePCM& pcm, std::size_t limit = 10);

/// RIRecords keyed by (n, canonical code). Concurrent lookups of one key
/// share a single computation.
class ThresholdCache {
 public:
  explicit ThresholdCache(MonitorConfig config) : config_(std::move(config)) {}

  /// Cached record of the class; computed on first use.
  RIRecord get(const GraphClass& cls);
  /// The record get() would return, computed without the cache.
  RIRecord compute(const GraphClass& cls) const;
  /// graph_id of the class within its (n, m) family, if enumerable.
  std::optional<int> graph_id(const GraphClass& cls);
  /// Probability-weighted mean RI over the (n, m) family.
  double naive_ri(int n, int m);
  std::size_t size() const;

 private:
  const GraphFamily* family(int n, int m);

  MonitorConfig config_;
  mutable std::mutex mutex_;
  std::map<std::pair<int, EdgeCode>, std::shared_future<RIRecord>> records_;
  std::map<std::pair<int, int>, std::shared_future<double>> naive_;
  std::map<std::pair<int, int>, std::shared_ptr<const GraphFamily>> families_;
};

struct HistoryEntry {
  std::int64_t timestamp_ms = 0;
  int i = 0;
  int j = 0;
  /// Empty for a cleared comparison.
  std::optional<double> value;
  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// Status of a matrix against thresholds from the cache.
StatusReport evaluate(const IncompletePCM& pcm, ThresholdCache& cache,
                      const MonitorConfig& config);

/// The service behind the HTTP interface. Indices are 0-based here.
class MonitorService {
 public:
  explicit MonitorService(MonitorConfig config = {});

  /// Throws BadRequestError unless 2 <= n <= 9.
  std::string create_session(int n);
  StatusReport put_comparison(const std::string& id, int i, int j, double value);
  /// Throws BadRequestError when the comparison is already missing.
  StatusReport delete_comparison(const std::string& id, int i, int j);
  StatusReport get_status(const std::string& id);

  IncompletePCM matrix(const std::string& id);
  int order(const std::string& id);
  std::vector<HistoryEntry> history(const std::string& id);
  /// Status obtained by applying the session history to an empty matrix.
  StatusReport replay(const std::string& id);

  /// Record for the class with this hex canonical code. Throws
  /// BadRequestError unless the code is canonical, has m missing pairs and
  /// describes a connected graph.
  RIRecord threshold(int n, int m, const std::string& code);

  /// Rebuilds sessions from config.journal_path and keeps appending to it.
  /// Returns the number of sessions restored.
  std::size_t recover();

  const MonitorConfig& config() const { return config_; }
  ThresholdCache& cache() { return cache_; }

 private:
  struct Session {
    std::mutex mutex;
    int n = 0;
    IncompletePCM pcm;
    std::vector<HistoryEntry> history;
    explicit Session(int order) : n(order), pcm(order) {}
  };

  std::shared_ptr<Session> find(const std::string& id);
  void check_indices(const Session& s, int i, int j) const;
  void journal(const std::string& line);
  std::string new_id();

  MonitorConfig config_;
  ThresholdCache cache_;
  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex journal_mutex_;
  std::ofstream journal_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_ = 0;
};

}  // namespace pcmri
