#include "pcmri/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcmri {

ComparisonGraph::ComparisonGraph(int n) : n_(n) {
  if (n < 1 || n > kMaxOrder)
    throw std::invalid_argument("graph order must be in [1, " +
                                std::to_string(kMaxOrder) + "]");
  adjacency_.assign(static_cast<std::size_t>(n) * n, 0);
}

ComparisonGraph::ComparisonGraph(int n, std::span<const Slot> edges)
    : ComparisonGraph(n) {
  for (const auto& e : edges) {
    const int before = edge_count_;
    add_edge(e.i, e.j);
    if (edge_count_ == before) throw std::invalid_argument("repeated edge");
  }
}

ComparisonGraph ComparisonGraph::complete_minus(int n,
                                                std::span<const Slot> missing) {
  ComparisonGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  for (const auto& e : missing) g.remove_edge(e.i, e.j);
  return g;
}

std::vector<Slot> ComparisonGraph::edges() const {
  std::vector<Slot> out;
  out.reserve(edge_count_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adjacent(i, j)) out.push_back({i, j});
  return out;
}

int ComparisonGraph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < n_; ++u) d += adjacency_[v * n_ + u];
  return d;
}

std::vector<int> ComparisonGraph::degree_sequence() const {
  std::vector<int> out(n_);
  for (int v = 0; v < n_; ++v) out[v] = degree(v);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

int ComparisonGraph::max_degree() const { return degree_sequence().front(); }
int ComparisonGraph::min_degree() const { return degree_sequence().back(); }

Matrix ComparisonGraph::adjacency_matrix() const {
  Matrix b(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) b(i, j) = adjacency_[i * n_ + j];
  return b;
}

void ComparisonGraph::add_edge(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
    throw std::invalid_argument("bad edge (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  if (adjacent(i, j)) return;
  adjacency_[i * n_ + j] = adjacency_[j * n_ + i] = 1;
  ++edge_count_;
}

void ComparisonGraph::remove_edge(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
    throw std::invalid_argument("bad edge (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  if (!adjacent(i, j)) return;
  adjacency_[i * n_ + j] = adjacency_[j * n_ + i] = 0;
  --edge_count_;
}

ComparisonGraph representing_graph(const IncompletePCM& pcm) {
  ComparisonGraph g(pcm.size());
  for (const auto& s : pcm.known_slots()) g.add_edge(s.i, s.j);
  return g;
}

bool is_connected(const ComparisonGraph& graph) {
  const int n = graph.size();
  std::vector<int> stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < n; ++u) {
      if (!seen[u] && graph.adjacent(v, u)) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

std::string format_degree_sequence(std::span<const int> degrees) {
  std::string out = "[";
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(degrees[k]);
  }
  return out + "]";
}

}  // namespace pcmri
