#pragma once

#include <utility>
#include <vector>

namespace gnekit {

/// Undirected communication graph over players 1..N.
/// Neighborhoods are closed: neighborhood(i) always contains i itself.
class NetworkGraph {
 public:
  NetworkGraph() = default;
  NetworkGraph(int node_count, std::vector<std::pair<int, int>> edges);

  int node_count() const { return node_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  /// Closed neighborhood: i together with every node sharing an edge with i. Sorted, 1-based.
  const std::vector<int>& neighborhood(int i) const;
  bool connected() const;

  /// Copy of this graph with additional edges (duplicates ignored).
  NetworkGraph with_extra_edges(const std::vector<std::pair<int, int>>& extra) const;

 private:
  int node_count_ = 0;
  std::vector<std::pair<int, int>> edges_;              // normalized (lo, hi), sorted, unique
  std::vector<std::vector<int>> closed_neighborhoods_;  // per node, 1-based members

  void rebuild();
};

}  // namespace gnekit
