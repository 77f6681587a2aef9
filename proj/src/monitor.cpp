#include "pcmri/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "pcmri/graph.hpp"
#include "pcmri/kernels.hpp"
#include "pcmri/rng.hpp"
#include "pcmri/spectral.hpp"

namespace pcmri {

namespace {

double binomial(int k, int m) {
  double r = 1.0;
  for (int t = 1; t <= m; ++t) r = r * (k - m + t) / t;
  return r;
}

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// Exactly one of the waiting callers runs compute(); the rest block on the
// shared future. A failed computation is forgotten so the next call retries.
template <typename Key, typename Value, typename Compute>
Value single_flight(std::mutex& mutex, std::map<Key, std::shared_future<Value>>& map,
                    const Key& key, Compute&& compute) {
  std::promise<Value> promise;
  std::shared_future<Value> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex);
    if (auto it = map.find(key); it != map.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      map.emplace(key, future);
      owner = true;
    }
  }
  if (owner) {
    try {
      promise.set_value(compute());
    } catch (...) {
      {
        std::lock_guard lock(mutex);
        map.erase(key);
      }
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kAcceptable: return "ACCEPTABLE";
    case Verdict::kUnacceptable: return "UNACCEPTABLE";
    case Verdict::kNotEvaluable: break;
  }
  return "NOT_EVALUABLE";
}

std::vector<SuspectTriad> suspect_triads(const IncompletePCM& pcm, std::size_t limit) {
  const int n = pcm.size();
  std::vector<SuspectTriad> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto aij = pcm.at(i, j);
      if (!aij) continue;
      for (int k = j + 1; k < n; ++k) {
        const auto ajk = pcm.at(j, k);
        const auto aik = pcm.at(i, k);
        if (!ajk || !aik) continue;
        const double error = std::abs(std::log(*aij * *ajk / *aik));
        if (error > 1e-9) out.push_back({i, j, k, error});
      }
    }
  std::stable_sort(out.begin(), out.end(), [](const SuspectTriad& a, const SuspectTriad& b) {
    return a.error > b.error;
  });
  if (out.size() > limit) out.resize(limit);
  return out;
}

const GraphFamily* ThresholdCache::family(int n, int m) {
  if (binomial(pair_count(n), m) > config_.graph_id_limit) return nullptr;
  std::lock_guard lock(mutex_);
  auto& slot = families_[{n, m}];
  if (!slot) slot = std::make_shared<const GraphFamily>(GraphFamily::enumerate(n, m));
  return slot.get();
}

std::optional<int> ThresholdCache::graph_id(const GraphClass& cls) {
  const GraphFamily* f = family(cls.n, cls.m);
  if (!f) return std::nullopt;
  const auto index = f->find(cls.canonical_code);
  if (!index) return std::nullopt;
  return f->classes()[*index].graph_id;
}

RIRecord ThresholdCache::compute(const GraphClass& cls) const {
  const double assignments = std::pow(17.0, pair_count(cls.n) - cls.m);
  const bool exact = cls.n <= config_.exact_max_n &&
                     assignments <= static_cast<double>(config_.exact_limit);
  const Sampling sampling =
      exact ? Sampling::exact() : Sampling::monte_carlo(config_.samples, config_.seed);
  return random_index(cls, sampling, config_.method);
}

RIRecord ThresholdCache::get(const GraphClass& cls) {
  GraphClass keyed = cls;
  keyed.graph_id = graph_id(cls).value_or(0);
  return single_flight(mutex_, records_, std::pair{cls.n, cls.canonical_code},
                       [&] { return compute(keyed); });
}

double ThresholdCache::naive_ri(int n, int m) {
  return single_flight(mutex_, naive_, std::pair{n, m}, [&] {
    const GraphFamily* f = family(n, m);
    if (!f || f->classes().empty())
      throw std::invalid_argument("family too large for a naive random index");
    std::vector<double> ri;
    std::vector<double> weight;
    for (const GraphClass& cls : f->classes()) {
      ri.push_back(get(cls).random_index);
      weight.push_back(exact_occurrence_probability(*f, cls));
    }
    return naive_random_index(ri, weight);
  });
}

std::size_t ThresholdCache::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

StatusReport evaluate(const IncompletePCM& pcm, ThresholdCache& cache,
                      const MonitorConfig& config) {
  StatusReport r;
  r.n = pcm.size();
  r.m = pcm.missing_count();
  r.suspect_triads = suspect_triads(pcm);
  const ComparisonGraph graph = representing_graph(pcm);
  r.connected = is_connected(graph);
  GraphClass cls = classify(graph);
  r.canonical_code = cls.code_hex();
  r.spectral_radius = cls.spectral_radius;
  if (!r.connected) return r;

  r.graph_id = cache.graph_id(cls);
  if (r.graph_id) cls.graph_id = *r.graph_id;
  const CompletionResult completion = minimize_lambda_max(pcm, config.method);
  r.lambda_star = completion.lambda_star;
  r.ci = consistency_index(completion.lambda_star, r.n);

  // A spanning tree leaves the threshold undefined.
  if (graph.edge_count() == r.n - 1) return r;

  const RIRecord record = cache.get(cls);
  r.ri = record.random_index;
  if (r.n <= config.naive_max_n) r.naive_ri = cache.naive_ri(r.n, r.m);
  if (!(record.random_index > 1e-9)) return r;
  r.cr = consistency_ratio(*r.ci, record.random_index);
  r.verdict = is_acceptable(*r.cr) ? Verdict::kAcceptable : Verdict::kUnacceptable;
  return r;
}

MonitorService::MonitorService(MonitorConfig config)
    : config_(std::move(config)), cache_(config_) {
  std::random_device device;
  id_salt_ = (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

std::string MonitorService::new_id() {
  char buf[33];
  const std::uint64_t c = ++id_counter_;
  std::snprintf(buf, sizeof buf, "%016llx%016llx",
                static_cast<unsigned long long>(CounterRng::mix(id_salt_ ^ c)),
                static_cast<unsigned long long>(CounterRng::mix(c + id_salt_ * 3)));
  return buf;
}

std::shared_ptr<MonitorService::Session> MonitorService::find(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + id);
  return it->second;
}

void MonitorService::check_indices(const Session& s, int i, int j) const {
  if (i < 0 || j < 0 || i >= s.n || j >= s.n)
    throw BadRequestError("alternative index out of range");
  if (i == j) throw BadRequestError("diagonal entries are fixed at 1");
}

void MonitorService::journal(const std::string& line) {
  if (config_.journal_path.empty()) return;
  std::lock_guard lock(journal_mutex_);
  if (!journal_.is_open()) {
    journal_.open(config_.journal_path, std::ios::app);
    if (!journal_) throw std::runtime_error("cannot open journal " + config_.journal_path);
  }
  journal_ << line << '\n';
  journal_.flush();
}

std::string MonitorService::create_session(int n) {
  if (n < 2 || n > 9) throw BadRequestError("n must be between 2 and 9");
  auto session = std::make_shared<Session>(n);
  std::string id;
  {
    std::lock_guard lock(sessions_mutex_);
    do id = new_id();
    while (sessions_.count(id));
    sessions_.emplace(id, session);
  }
  journal(nlohmann::json{{"op", "create"}, {"id", id}, {"n", n}, {"ts", now_ms()}}.dump());
  return id;
}

StatusReport MonitorService::put_comparison(const std::string& id, int i, int j,
                                            double value) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  check_indices(*s, i, j);
  if (!(value > 0.0) || !std::isfinite(value))
    throw BadRequestError("comparison value must be positive");
  s->pcm.set_comparison(i, j, value);
  const HistoryEntry entry{now_ms(), i, j, value};
  s->history.push_back(entry);
  journal(nlohmann::json{{"op", "put"}, {"id", id}, {"i", i}, {"j", j},
                         {"value", value}, {"ts", entry.timestamp_ms}}
              .dump());
  return evaluate(s->pcm, cache_, config_);
}

StatusReport MonitorService::delete_comparison(const std::string& id, int i, int j) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  check_indices(*s, i, j);
  if (!s->pcm.is_known(i, j)) throw BadRequestError("comparison is already missing");
  s->pcm.clear_comparison(i, j);
  const HistoryEntry entry{now_ms(), i, j, std::nullopt};
  s->history.push_back(entry);
  journal(nlohmann::json{{"op", "delete"}, {"id", id}, {"i", i}, {"j", j},
                         {"ts", entry.timestamp_ms}}
              .dump());
  return evaluate(s->pcm, cache_, config_);
}

StatusReport MonitorService::get_status(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return evaluate(s->pcm, cache_, config_);
}

IncompletePCM MonitorService::matrix(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->pcm;
}

int MonitorService::order(const std::string& id) { return find(id)->n; }

std::vector<HistoryEntry> MonitorService::history(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->history;
}

StatusReport MonitorService::replay(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  IncompletePCM pcm(s->n);
  for (const HistoryEntry& e : s->history) {
    if (e.value) pcm.set_comparison(e.i, e.j, *e.value);
    else pcm.clear_comparison(e.i, e.j);
  }
  return evaluate(pcm, cache_, config_);
}

RIRecord MonitorService::threshold(int n, int m, const std::string& code) {
  if (n < 2 || n > 9) throw BadRequestError("n must be between 2 and 9");
  EdgeCode bits;
  try {
    bits = code_from_hex(n, code);
  } catch (const std::invalid_argument& e) {
    throw BadRequestError(e.what());
  }
  const ComparisonGraph graph = decode_graph(n, bits);
  if (pair_count(n) - graph.edge_count() != m)
    throw BadRequestError("code does not have m missing comparisons");
  if (!is_connected(graph)) throw BadRequestError("graph of the code is disconnected");
  if (canonical_form(graph) != bits) throw BadRequestError("code is not canonical");
  return cache_.get(classify(graph));
}

std::size_t MonitorService::recover() {
  if (config_.journal_path.empty()) return 0;
  std::ifstream in(config_.journal_path);
  std::size_t restored = 0;
  std::string line;
  std::lock_guard lock(sessions_mutex_);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto event = nlohmann::json::parse(line);
    const std::string op = event.at("op");
    const std::string id = event.at("id");
    if (op == "create") {
      sessions_[id] = std::make_shared<Session>(event.at("n").get<int>());
      ++restored;
      continue;
    }
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw std::runtime_error("journal refers to unknown session");
    Session& s = *it->second;
    const int i = event.at("i");
    const int j = event.at("j");
    std::optional<double> value;
    if (op == "put") {
      value = event.at("value").get<double>();
      s.pcm.set_comparison(i, j, *value);
    } else {
      s.pcm.clear_comparison(i, j);
    }
    s.history.push_back({event.at("ts").get<std::int64_t>(), i, j, value});
  }
  return restored;
}

}  // namespace pcmri
