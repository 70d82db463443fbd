#pragma once

// Small model builders shared by the test binaries.

#include <cmath>
#include <utility>
#include <vector>

#include "isinglearn/model.hpp"

namespace testutil {

inline ising::IsingModel edge_model(double theta, double alpha = -1.0, double beta = -1.0,
                                    double h = 0.0) {
  const double mag = std::fabs(theta);
  if (alpha < 0.0) alpha = mag;
  if (beta < 0.0) beta = mag;
  return ising::make_model(ising::Graph(2, {{0, 1}}, 1), {theta}, {0.0, 0.0}, alpha, beta, h);
}

/// Path 0-1-...-k with the given couplings, zero fields.
inline ising::IsingModel path_model(const std::vector<double>& thetas) {
  const int p = static_cast<int>(thetas.size()) + 1;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < p; ++v) edges.emplace_back(v, v + 1);
  double lo = std::fabs(thetas[0]), hi = lo;
  for (double t : thetas) {
    lo = std::min(lo, std::fabs(t));
    hi = std::max(hi, std::fabs(t));
  }
  return ising::make_model(ising::Graph(p, std::move(edges), 2), thetas,
                           std::vector<double>(p, 0.0), lo, hi, 0.0);
}

inline ising::IsingModel cycle_model(int p, double theta) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < p; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, p - 1);
  return ising::make_model(ising::Graph(p, std::move(edges), 2),
                           std::vector<double>(p, theta), std::vector<double>(p, 0.0),
                           std::fabs(theta), std::fabs(theta), 0.0);
}

/// Star with node 0 at the center and p-1 leaves.
inline ising::IsingModel star_model(int p, double theta) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < p; ++v) edges.emplace_back(0, v);
  return ising::make_model(ising::Graph(p, std::move(edges), p - 1),
                           std::vector<double>(p - 1, theta), std::vector<double>(p, 0.0),
                           std::fabs(theta), std::fabs(theta), 0.0);
}

/// p isolated nodes, optional uniform field.
inline ising::IsingModel empty_model(int p, double h = 0.0) {
  return ising::make_model(ising::Graph(p, {}, 0), {}, std::vector<double>(p, h), 0.1, 1.0,
                           std::fabs(h));
}

}  // namespace testutil
