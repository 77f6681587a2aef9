#include "pcmri/graph_enum.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "pcmri/rng.hpp"
#include "pcmri/spectral.hpp"

namespace pcmri {

namespace {

constexpr int kMaxCanonicalOrder = 10;
constexpr double kMaxSubsets = 5e7;

EdgeCode full_mask(int n) {
  const int k = pair_count(n);
  return k == 64 ? ~EdgeCode{0} : (EdgeCode{1} << k) - 1;
}

// Vertex colors from iterated degree refinement. Colors are ranks of sorted
// signatures, so they do not depend on the input labeling.
std::vector<int> refined_colors(const ComparisonGraph& g) {
  const int n = g.size();
  std::vector<int> color(n);
  for (int v = 0; v < n; ++v) color[v] = g.degree(v);

  int classes = 0;
  for (int round = 0; round <= n; ++round) {
    std::vector<std::vector<int>> signature(n);
    for (int v = 0; v < n; ++v) {
      signature[v].push_back(color[v]);
      std::vector<int> neighbours;
      for (int u = 0; u < n; ++u)
        if (g.adjacent(v, u)) neighbours.push_back(color[u]);
      std::sort(neighbours.begin(), neighbours.end());
      signature[v].insert(signature[v].end(), neighbours.begin(), neighbours.end());
    }
    std::vector<std::vector<int>> distinct = signature;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v)
      color[v] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), signature[v]) -
          distinct.begin());
    const int now = static_cast<int>(distinct.size());
    if (now == classes) break;
    classes = now;
  }
  return color;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const ComparisonGraph& g)
      : g_(g), n_(g.size()), k_(pair_count(g.size())), color_(refined_colors(g)) {
    std::vector<int> sorted = color_;
    std::sort(sorted.begin(), sorted.end());
    slot_color_ = sorted;
  }

  EdgeCode run() {
    best_ = full_mask(n_);
    used_.fill(false);
    descend(0, 0);
    return best_;
  }

 private:
  void descend(int pos, EdgeCode code) {
    if (pos == n_) {
      best_ = std::min(best_, code);
      return;
    }
    // Bits of pairs in columns 0..pos.
    const int settled = pos * (pos + 1) / 2;
    const EdgeCode prefix = settled == 0 ? 0
                            : full_mask(n_) & ~((EdgeCode{1} << (k_ - settled)) - 1);
    for (int v = 0; v < n_; ++v) {
      if (used_[v] || color_[v] != slot_color_[pos]) continue;
      EdgeCode next = code;
      for (int i = 0; i < pos; ++i)
        if (g_.adjacent(perm_[i], v)) next |= pair_bit(n_, i, pos);
      if ((next & prefix) > (best_ & prefix)) continue;
      used_[v] = true;
      perm_[pos] = v;
      descend(pos + 1, next);
      used_[v] = false;
    }
  }

  const ComparisonGraph& g_;
  int n_;
  int k_;
  std::vector<int> color_;
  std::vector<int> slot_color_;
  std::array<bool, kMaxCanonicalOrder> used_{};
  std::array<int, kMaxCanonicalOrder> perm_{};
  EdgeCode best_ = 0;
};

double binomial(int k, int m) {
  double r = 1.0;
  for (int t = 1; t <= m; ++t) r = r * (k - m + t) / t;
  return r;
}

}  // namespace

EdgeCode edge_code(const ComparisonGraph& graph) {
  const int n = graph.size();
  EdgeCode code = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (graph.adjacent(i, j)) code |= pair_bit(n, i, j);
  return code;
}

ComparisonGraph decode_graph(int n, EdgeCode code) {
  ComparisonGraph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (code & pair_bit(n, i, j)) g.add_edge(i, j);
  return g;
}

std::string code_to_hex(int n, EdgeCode code) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int digits = std::max(1, (pair_count(n) + 3) / 4);
  std::string out(digits, '0');
  for (int d = digits - 1; d >= 0; --d, code >>= 4) out[d] = kDigits[code & 0xf];
  return out;
}

EdgeCode code_from_hex(int n, std::string_view hex) {
  if (hex.empty()) throw std::invalid_argument("empty canonical code");
  EdgeCode code = 0;
  for (char c : hex) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit in canonical code");
    if (code >> 60) throw std::invalid_argument("canonical code too long");
    code = (code << 4) | static_cast<EdgeCode>(d);
  }
  if (code & ~full_mask(n))
    throw std::invalid_argument("canonical code has bits beyond n(n-1)/2");
  return code;
}

EdgeCode canonical_form(const ComparisonGraph& graph) {
  if (graph.size() > kMaxCanonicalOrder)
    throw std::invalid_argument("canonical form supports at most 10 vertices");
  return CanonicalSearch(graph).run();
}

GraphClass classify(const ComparisonGraph& graph) {
  GraphClass cls;
  cls.n = graph.size();
  cls.m = pair_count(cls.n) - graph.edge_count();
  cls.canonical_code = canonical_form(graph);
  cls.degree_sequence = graph.degree_sequence();
  cls.spectral_radius = spectral_radius(cls.representative());
  return cls;
}

std::vector<Slot> GraphClass::missing_pairs() const {
  std::vector<Slot> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(canonical_code & pair_bit(n, i, j))) out.push_back({i, j});
  return out;
}

GraphFamily GraphFamily::enumerate(int n, int m) {
  if (n < 2 || n > kMaxCanonicalOrder)
    throw std::invalid_argument("enumeration supports 2 <= n <= 10");
  const int k = pair_count(n);
  if (m < 0 || m > k)
    throw std::invalid_argument("m must be in [0, n(n-1)/2]");
  if (binomial(k, m) > kMaxSubsets)
    throw std::invalid_argument("too many missing-edge subsets to enumerate");

  GraphFamily family;
  family.n_ = n;
  family.m_ = m;
  const EdgeCode full = full_mask(n);
  std::unordered_map<EdgeCode, int> by_code;
  std::vector<GraphClass> found;

  auto visit = [&](EdgeCode missing) {
    const ComparisonGraph g = decode_graph(n, full & ~missing);
    if (!is_connected(g)) return;
    ++family.connected_;
    const EdgeCode code = canonical_form(g);
    auto [it, inserted] = by_code.try_emplace(code, static_cast<int>(found.size()));
    if (inserted) {
      GraphClass cls;
      cls.n = n;
      cls.m = m;
      cls.canonical_code = code;
      cls.degree_sequence = g.degree_sequence();
      found.push_back(std::move(cls));
    }
    ++found[it->second].labeled_count;
    family.by_missing_.emplace(missing, it->second);
  };

  if (m == 0) {
    visit(0);
  } else {
    // Gosper's hack over the m-subsets of k bits.
    EdgeCode subset = (EdgeCode{1} << m) - 1;
    const EdgeCode limit = EdgeCode{1} << k;
    while (subset < limit) {
      visit(subset);
      const EdgeCode low = subset & (~subset + 1);
      const EdgeCode ripple = subset + low;
      subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
  }

  std::vector<int> order(found.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = static_cast<int>(c);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return found[a].canonical_code < found[b].canonical_code;
  });
  std::vector<int> rank(found.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = static_cast<int>(r);
    GraphClass cls = std::move(found[order[r]]);
    cls.graph_id = static_cast<int>(r) + 1;
    cls.spectral_radius = spectral_radius(cls.representative());
    family.classes_.push_back(std::move(cls));
  }
  for (auto& [missing, index] : family.by_missing_) index = rank[index];
  return family;
}

std::optional<int> GraphFamily::class_of_missing(EdgeCode missing) const {
  if (auto it = by_missing_.find(missing); it != by_missing_.end()) return it->second;
  return std::nullopt;
}

std::optional<int> GraphFamily::find(EdgeCode canonical_code) const {
  auto it = std::lower_bound(
      classes_.begin(), classes_.end(), canonical_code,
      [](const GraphClass& c, EdgeCode code) { return c.canonical_code < code; });
  if (it == classes_.end() || it->canonical_code != canonical_code) return std::nullopt;
  return static_cast<int>(it - classes_.begin());
}

std::vector<GraphClass> enumerate_missing_edge_graphs(int n, int m) {
  return GraphFamily::enumerate(n, m).classes();
}

double independent_edges_probability(int n) {
  if (n < 3) throw std::invalid_argument("two missing edges need n >= 3");
  // 1 - (4n - 8) / (n(n-1) - 2) reduces to (n - 3) / (n + 1); one division
  // keeps n = 4 at exactly 0.2.
  return static_cast<double>(n - 3) / (n + 1);
}

std::vector<double> occurrence_probabilities(const GraphFamily& family,
                                             std::uint64_t samples, std::uint64_t seed) {
  const int n = family.n();
  const int m = family.m();
  const auto& classes = family.classes();
  std::vector<double> out(classes.size());

  if (m == 2) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const auto missing = classes[c].missing_pairs();
      const bool shared = missing[0].i == missing[1].i || missing[0].i == missing[1].j ||
                          missing[0].j == missing[1].i || missing[0].j == missing[1].j;
      const double independent = independent_edges_probability(n);
      out[c] = shared ? 1.0 - independent : independent;
    }
    return out;
  }

  const int k = pair_count(n);
  const std::size_t class_count = classes.size();
  std::vector<std::uint64_t> hits(class_count, 0);
  std::uint64_t connected = 0;
  const auto draws = static_cast<std::int64_t>(samples);

#pragma omp parallel reduction(+ : connected)
  {
    std::vector<int> positions(k);
    std::vector<std::uint64_t> local(class_count, 0);
#pragma omp for schedule(static)
    for (std::int64_t d = 0; d < draws; ++d) {
      for (int p = 0; p < k; ++p) positions[p] = p;
      CounterRng rng(seed, static_cast<std::uint64_t>(d));
      EdgeCode missing = 0;
      for (int t = 0; t < m; ++t) {
        const int pick = t + static_cast<int>(rng.below(k - t));
        std::swap(positions[t], positions[pick]);
        missing |= EdgeCode{1} << (k - 1 - positions[t]);
      }
      if (const auto c = family.class_of_missing(missing)) {
        ++connected;
        ++local[*c];
      }
    }
#pragma omp critical(pcmri_probability_merge)
    for (std::size_t c = 0; c < class_count; ++c) hits[c] += local[c];
  }
  if (connected == 0) throw std::invalid_argument("no connected draw");
  for (std::size_t c = 0; c < class_count; ++c)
    out[c] = static_cast<double>(hits[c]) / static_cast<double>(connected);
  return out;
}

double occurrence_probability(const GraphFamily& family, const GraphClass& cls,
                              std::uint64_t samples, std::uint64_t seed) {
  const auto index = family.find(cls.canonical_code);
  if (cls.n != family.n() || cls.m != family.m() || !index)
    throw std::invalid_argument("class does not belong to this family");
  return occurrence_probabilities(family, samples, seed)[*index];
}

double occurrence_probability(int n, int m, const GraphClass& cls,
                              std::uint64_t samples, std::uint64_t seed) {
  return occurrence_probability(GraphFamily::enumerate(n, m), cls, samples, seed);
}

double exact_occurrence_probability(const GraphFamily& family,
                                    const GraphClass& cls) {
  const auto index = family.find(cls.canonical_code);
  if (!index) throw std::invalid_argument("class does not belong to this family");
  return static_cast<double>(family.classes()[*index].labeled_count) /
         static_cast<double>(family.connected_count());
}

}  // namespace pcmri
