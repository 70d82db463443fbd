#include "isinglearn/graph.hpp"

#include <algorithm>
#include <string>

#include "isinglearn/errors.hpp"

namespace ising {

Graph::Graph(int p, std::vector<std::pair<int, int>> edges, int degree_bound)
    : p_(p), degree_bound_(degree_bound) {
  if (p < 1) throw DataError("graph: p must be >= 1, got " + std::to_string(p));
  if (degree_bound < 0)
    throw DataError("graph: degree bound must be >= 0, got " + std::to_string(degree_bound));
  for (auto& [a, b] : edges) {
    if (a == b) throw DataError("graph: self-loop at node " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= p)
      throw DataError("graph: edge (" + std::to_string(a) + "," + std::to_string(b) +
                      ") out of range for p=" + std::to_string(p));
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k] == edges[k - 1])
      throw DataError("graph: duplicate edge (" + std::to_string(edges[k].first) + "," +
                      std::to_string(edges[k].second) + ")");
  }
  edges_ = std::move(edges);
  adj_.assign(p_, {});
  for (const auto& [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& nbrs : adj_) d = std::max(d, static_cast<int>(nbrs.size()));
  return d;
}

bool Graph::has_edge(int i, int j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

}  // namespace ising
