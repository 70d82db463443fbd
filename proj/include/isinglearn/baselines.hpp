#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "isinglearn/graph.hpp"
#include "isinglearn/learner.hpp"
#include "isinglearn/samples.hpp"

namespace ising {

struct BaselineConfig {
  int d_max = 3;
  double indep_eps = 0.05;
  Reconcile reconcile = Reconcile::And;
  // Work guard; candidate counts grow like p^d_max per node.
  int max_p = 64;
  int max_d = 3;
};

/// Influence values for every node given a conditioning set; entries inside
/// cond + {u} are ignored by the search.
using InfluenceFn = std::function<std::vector<double>(int u, std::span<const int> cond)>;

/// For each node, the smallest candidate set (ties by lexicographic order)
/// outside of which every residual influence is at most indep_eps. When no
/// candidate passes, falls back to the set minimizing the worst residual.
std::vector<std::vector<int>> exhaustive_neighborhoods(int p, const InfluenceFn& influences,
                                                       const BaselineConfig& cfg);

/// Exhaustive search driven by the empirical estimator.
RecoveryReport exhaustive_learn(const SampleSet& s, const BaselineConfig& cfg,
                                const Graph* reference = nullptr);

/// Plug-in pairwise mutual information in nats, symmetric, zero diagonal.
std::vector<std::vector<double>> pairwise_mi_nats(const SampleSet& s);

/// Maximum-weight spanning tree on pairwise mutual information. Tie-break by
/// lexicographic edge order; result always has p-1 edges (p >= 1).
Graph chow_liu(const SampleSet& s);

}  // namespace ising
