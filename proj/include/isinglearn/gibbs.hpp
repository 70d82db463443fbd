#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isinglearn/model.hpp"
#include "isinglearn/samples.hpp"

namespace ising {

struct GibbsConfig {
  enum class Scan { random, systematic };
  std::int64_t burn_in_sweeps = -1;  // -1 resolves to 1000 * p
  std::int64_t thinning_sweeps = 10;
  Scan scan = Scan::random;
  std::uint64_t seed = 0;
  int chains = 1;  // fixed by config, never by worker count
};

struct GibbsResult {
  SampleSet samples;
  std::vector<int> chain_of_row;
  // Heuristic flag (beta * d >= 2.5): slow mixing likely; output still
  // produced, caller decides what to do with it.
  bool mixing_warning = false;
};

/// P(X_u = +1 | all other spins); the single-site heat-bath rule.
double gibbs_update_prob(const IsingModel& model, int u, std::span<const std::int8_t> spins);

/// n retained rows, ordered by (chain, draw index). Determinism contract:
/// (model, n, config) fully determine the output.
GibbsResult gibbs_sample(const IsingModel& model, std::int64_t n, const GibbsConfig& cfg);

}  // namespace ising
