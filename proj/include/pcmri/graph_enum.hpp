#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pcmri/graph.hpp"

namespace pcmri {

/// Bit string over the pairs of an n-vertex graph. Pairs are taken column
/// by column from the upper triangle, (0,1), (0,2), (1,2), (0,3), ..., and
/// the first pair is the most significant of the n(n-1)/2 used bits, so
/// integer order is lexicographic order of the string.
using EdgeCode = std::uint64_t;

inline constexpr int pair_count(int n) { return n * (n - 1) / 2; }
/// Position of pair (i, j), i < j, in the string.
inline constexpr int pair_position(int i, int j) { return j * (j - 1) / 2 + i; }
inline constexpr EdgeCode pair_bit(int n, int i, int j) {
  return EdgeCode{1} << (pair_count(n) - 1 - pair_position(i, j));
}

/// Edge string of the graph under its own labeling.
EdgeCode edge_code(const ComparisonGraph& graph);
ComparisonGraph decode_graph(int n, EdgeCode code);

/// Lowercase hex, ceil(n(n-1)/8) digits, no prefix.
std::string code_to_hex(int n, EdgeCode code);
EdgeCode code_from_hex(int n, std::string_view hex);

/// Smallest edge string over the relabelings that list vertices in the
/// order of their refined degree classes. Equal for two graphs iff they are
/// isomorphic. Throws std::invalid_argument for n > 10.
EdgeCode canonical_form(const ComparisonGraph& graph);

/// Isomorphism class of connected graphs on n vertices with m of the
/// n(n-1)/2 edges missing.
struct GraphClass {
  int n = 0;
  int m = 0;
  EdgeCode canonical_code = 0;
  std::vector<int> degree_sequence;
  double spectral_radius = 0.0;
  /// 1-based position in canonical-code order.
  int graph_id = 0;
  /// Number of labeled graphs in the class.
  std::uint64_t labeled_count = 0;

  /// The graph whose edge string is the canonical code.
  ComparisonGraph representative() const { return decode_graph(n, canonical_code); }
  /// Missing pairs of the representative, row-major.
  std::vector<Slot> missing_pairs() const;
  std::string code_hex() const { return code_to_hex(n, canonical_code); }
};

/// Class of a single graph without enumerating its family: graph_id and
/// labeled_count stay 0. Throws std::invalid_argument for n > 10.
GraphClass classify(const ComparisonGraph& graph);

/// All classes for one (n, m), with a lookup from labeled missing-edge sets
/// to their class.
class GraphFamily {
 public:
  /// Throws std::invalid_argument outside 2 <= n <= 10, 0 <= m <= n(n-1)/2,
  /// or when the number of m-subsets exceeds 5e7.
  static GraphFamily enumerate(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<GraphClass>& classes() const { return classes_; }
  /// Labeled connected graphs with m missing edges.
  std::uint64_t connected_count() const { return connected_; }

  /// Index into classes() of K_n minus the pairs in missing (an EdgeCode
  /// over missing pairs); empty if that graph is disconnected.
  std::optional<int> class_of_missing(EdgeCode missing) const;
  /// Index of the class with this canonical code.
  std::optional<int> find(EdgeCode canonical_code) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::uint64_t connected_ = 0;
  std::vector<GraphClass> classes_;
  std::unordered_map<EdgeCode, int> by_missing_;
};

/// Classes of connected graphs with n vertices and m missing edges, sorted
/// by canonical code.
std::vector<GraphClass> enumerate_missing_edge_graphs(int n, int m);

/// 1 - (4n - 8) / (n(n-1) - 2): chance that two missing edges placed at
/// random share no vertex.
double independent_edges_probability(int n);

/// Probability that m missing edges placed uniformly at random produce a
/// graph of this class, given that the graph is connected.
///
/// m == 2 uses the closed form above. Otherwise m-subsets of the pairs are
/// drawn with CounterRng(seed, draw) and the class frequency among the
/// connected draws is returned. Throws std::invalid_argument if the class is
/// not in the family or if no draw was connected.
double occurrence_probability(const GraphFamily& family, const GraphClass& cls,
                              std::uint64_t samples, std::uint64_t seed);
double occurrence_probability(int n, int m, const GraphClass& cls,
                              std::uint64_t samples, std::uint64_t seed);
/// Same estimate for every class of the family at once, in classes() order.
/// The per-class overloads return the matching entry.
std::vector<double> occurrence_probabilities(const GraphFamily& family,
                                             std::uint64_t samples, std::uint64_t seed);

/// labeled_count / connected_count.
double exact_occurrence_probability(const GraphFamily& family,
                                    const GraphClass& cls);

}  // namespace pcmri
