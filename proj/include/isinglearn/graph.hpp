#pragma once

#include <utility>
#include <vector>

namespace ising {

/// Simple undirected graph on nodes 0..p-1 with a declared degree bound d.
/// Construction rejects self-loops, duplicate edges and out-of-range nodes.
/// Whether the declared bound actually holds is a model-validation question,
/// not a structural one, so it is checked by validate_model instead.
class Graph {
 public:
  Graph(int p, std::vector<std::pair<int, int>> edges, int degree_bound);

  int p() const { return p_; }
  int degree_bound() const { return degree_bound_; }

  /// Edges normalized to i < j and sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  const std::vector<int>& neighbors(int u) const { return adj_[u]; }
  int degree(int u) const { return static_cast<int>(adj_[u].size()); }
  int max_degree() const;
  bool has_edge(int i, int j) const;

  bool operator==(const Graph& other) const = default;

 private:
  int p_ = 0;
  int degree_bound_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace ising
