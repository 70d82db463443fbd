#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "isinglearn/graph.hpp"

namespace ising {

/// Pairwise binary model over spins x in {-1,+1}^p:
///   P(x) proportional to exp( sum_{(i,j) in E} theta_ij x_i x_j + sum_i theta_i x_i ).
/// The bounds (alpha, beta, h) describe the parameter class the model claims
/// to live in; validate_model reports where the claim fails.
struct IsingModel {
  Graph graph;
  // Keys normalized to i < j. Entries on non-edges are representable so that
  // validation can flag them rather than silently dropping them.
  std::map<std::pair<int, int>, double> couplings;
  std::vector<double> fields;  // size p
  double alpha = 0.0;
  double beta = 0.0;
  double h = 0.0;

  /// theta_ij, zero when no coupling is present.
  double coupling(int i, int j) const;
};

/// Build a model from couplings aligned with graph.edges() order.
IsingModel make_model(Graph graph, const std::vector<double>& edge_thetas,
                      std::vector<double> fields, double alpha, double beta, double h);

struct Violation {
  enum class Kind { coupling_range, non_edge_coupling, field_range, degree_bound };
  Kind kind;
  std::string detail;
};

/// Empty result means the parameters lie in the declared class:
/// alpha <= |theta_ij| <= beta on every edge, zero off the edges,
/// |theta_i| <= h, and every degree within the declared bound.
std::vector<Violation> validate_model(const IsingModel& model);

}  // namespace ising
