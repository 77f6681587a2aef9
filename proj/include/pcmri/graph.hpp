#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcmri/pcm.hpp"

namespace pcmri {

/// Simple undirected graph on vertices 0..n-1. Edges are the known
/// comparisons of a matrix.
class ComparisonGraph {
 public:
  explicit ComparisonGraph(int n);
  /// Throws std::invalid_argument on loops, repeated edges or bad indices.
  ComparisonGraph(int n, std::span<const Slot> edges);

  /// K_n minus the listed edges.
  static ComparisonGraph complete_minus(int n, std::span<const Slot> missing);

  int size() const { return n_; }
  bool adjacent(int i, int j) const { return adjacency_[i * n_ + j] != 0; }
  /// Edges (i < j) in row-major order.
  std::vector<Slot> edges() const;
  int edge_count() const { return edge_count_; }
  int degree(int v) const;
  /// Sorted non-increasing.
  std::vector<int> degree_sequence() const;
  int max_degree() const;
  int min_degree() const;

  /// Symmetric 0/1 adjacency matrix with zero diagonal.
  Matrix adjacency_matrix() const;

  void add_edge(int i, int j);
  void remove_edge(int i, int j);

  friend bool operator==(const ComparisonGraph&,
                         const ComparisonGraph&) = default;

 private:
  int n_;
  int edge_count_ = 0;
  std::vector<std::uint8_t> adjacency_;
};

/// Edge (i, j) is present iff a_ij is known.
ComparisonGraph representing_graph(const IncompletePCM& pcm);

/// True iff every vertex is reachable from vertex 0.
bool is_connected(const ComparisonGraph& graph);

/// "[4,4,3,3,2]"
std::string format_degree_sequence(std::span<const int> degrees);

}  // namespace pcmri
