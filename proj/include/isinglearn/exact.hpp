#pragma once

#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "isinglearn/model.hpp"
#include "isinglearn/samples.hpp"

namespace ising {

/// Full enumeration is meant for oracle work; beyond this many nodes use the
/// sequential sampler and the empirical estimator instead.
inline constexpr int kEnumerationCap = 20;

/// Partial spin assignment, e.g. {X_2 = +1, X_5 = -1}.
struct Condition {
  std::vector<std::pair<int, std::int8_t>> terms;  // sorted by node, distinct
  static Condition of(std::initializer_list<std::pair<int, int>> assignments);
};

/// All 2^p configuration log-weights; index bit k set means node k at +1.
struct JointTable {
  int p = 0;
  std::vector<double> log_weights;
  double log_z = 0.0;
  double max_log_weight = 0.0;
};

JointTable build_joint(const IsingModel& model, int cap = kEnumerationCap);

/// P(X_u = spin | cond), spin in {-1,+1}.
double conditional_prob(const JointTable& t, int u, int spin, const Condition& cond);

struct PairStats {
  double influence = 0.0;  // nu-bar: E_xS[ lambda_i(x_S) |nu_{u|i;x_S}| ]
  double mi_nats = 0.0;    // I(X_u; X_i | X_S)
};

/// One stratum sweep serving every candidate i at once; cheaper than looping
/// exact_influence when several candidates share (u, S).
std::vector<PairStats> exact_pair_stats(const JointTable& t, int u,
                                        std::span<const int> candidates, std::span<const int> S);

double exact_influence(const JointTable& t, int u, int i, std::span<const int> S);
double exact_conditional_mi(const JointTable& t, int u, int i, std::span<const int> S);

/// min over strata x_S and spins of P(X_u = spin | x_S).
double min_conditional_prob(const JointTable& t, int u, std::span<const int> S);

double node_entropy_nats(const JointTable& t, int u);

inline double nats_to_bits(double x) { return x / std::numbers::ln2; }

/// Inverse-CDF sampler over the exact distribution; same seed, same rows.
SampleSet exact_sampler(const JointTable& t, std::int64_t n, std::uint64_t seed);

}  // namespace ising
