#include "gnekit/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace gnekit {

NetworkGraph::NetworkGraph(int node_count, std::vector<std::pair<int, int>> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 1) throw std::invalid_argument("graph needs at least one node");
  for (auto& [a, b] : edges_) {
    if (a < 1 || a > node_count_ || b < 1 || b > node_count_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (a == b) throw std::invalid_argument("self loops are not allowed");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  rebuild();
}

void NetworkGraph::rebuild() {
  closed_neighborhoods_.assign(static_cast<size_t>(node_count_), {});
  for (int i = 1; i <= node_count_; ++i) {
    closed_neighborhoods_[static_cast<size_t>(i - 1)].push_back(i);
  }
  for (const auto& [a, b] : edges_) {
    closed_neighborhoods_[static_cast<size_t>(a - 1)].push_back(b);
    closed_neighborhoods_[static_cast<size_t>(b - 1)].push_back(a);
  }
  for (auto& nb : closed_neighborhoods_) std::sort(nb.begin(), nb.end());
}

bool NetworkGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

const std::vector<int>& NetworkGraph::neighborhood(int i) const {
  if (i < 1 || i > node_count_) throw std::out_of_range("node index out of range");
  return closed_neighborhoods_[static_cast<size_t>(i - 1)];
}

bool NetworkGraph::connected() const {
  if (node_count_ == 0) return false;
  std::vector<bool> seen(static_cast<size_t>(node_count_), false);
  std::vector<int> stack = {1};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : neighborhood(v)) {
      if (!seen[static_cast<size_t>(w - 1)]) {
        seen[static_cast<size_t>(w - 1)] = true;
        stack.push_back(w);
      }
    }
  }
  return count == node_count_;
}

NetworkGraph NetworkGraph::with_extra_edges(const std::vector<std::pair<int, int>>& extra) const {
  std::vector<std::pair<int, int>> merged = edges_;
  merged.insert(merged.end(), extra.begin(), extra.end());
  return NetworkGraph(node_count_, std::move(merged));
}

}  // namespace gnekit
