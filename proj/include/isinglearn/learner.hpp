#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isinglearn/constants.hpp"
#include "isinglearn/estimator.hpp"
#include "isinglearn/graph.hpp"
#include "isinglearn/model.hpp"
#include "isinglearn/samples.hpp"

namespace ising {

enum class LearnMode { practical, theoretical };
enum class Reconcile { And, Or };
enum class Termination { threshold, cap };

struct LearnConfig {
  double tau = 0.0;
  double eps = 0.0;  // bookkeeping for the guarantee; the algorithm reads tau only
  std::int64_t ell_cap = 0;
  LearnMode mode = LearnMode::practical;
  Reconcile reconcile = Reconcile::And;
  bool sequential_prune = false;  // experimental; default prunes against the frozen set
  bool signed_influence = false;

  /// eps < 0 defaults to tau/2; ell_cap < 0 defaults to
  /// min(floor(2/(tau-eps)^2), p-1).
  static LearnConfig practical(double tau, int p, double eps = -1.0, std::int64_t ell_cap = -1,
                               Reconcile reconcile = Reconcile::And);

  /// tau*, eps*, floor(ell*). Rejects bounds whose tau* underflows to zero.
  static LearnConfig theoretical(const TheoryConstants& c, Reconcile reconcile = Reconcile::And);

  void validate() const;  // 0 < eps < tau, ell_cap >= 0
};

struct NbhdTrace {
  int u = -1;
  std::vector<std::pair<int, double>> added;   // growth order, nu-bar-hat at addition
  std::vector<std::pair<int, double>> pruned;  // removed nodes, value at the pruning test
  std::vector<int> final_set;                  // ascending
  Termination terminated_by = Termination::threshold;
};

struct EdgeMetrics {
  bool exact_recovery = false;
  int fp = 0;
  int fn = 0;
  int hamming = 0;
};

struct PhaseTiming {
  double learn_seconds = 0.0;
  double score_seconds = 0.0;
};

struct RecoveryReport {
  int p = 0;
  std::int64_t n = 0;
  Graph learned{1, {}, 0};
  std::vector<NbhdTrace> traces;
  std::optional<EdgeMetrics> metrics;
  PhaseTiming timing;
  double tau = 0.0;
  double eps = 0.0;
  std::int64_t ell_cap = 0;
  LearnMode mode = LearnMode::practical;
  Reconcile reconcile = Reconcile::And;
  std::string samples_label;  // "exact-iid" / "approximate-iid" when known
};

/// Greedy growth by largest averaged influence while it clears tau, then one
/// pruning round. Growth also stops at the ell cap; that outcome is recorded
/// because under the theory's constants it cannot happen.
NbhdTrace learn_neighborhood(const SampleHistogram& h, int u, const LearnConfig& cfg);
NbhdTrace learn_neighborhood(const SampleSet& s, int u, const LearnConfig& cfg);

/// Per-node traces reconciled into an undirected graph. Work is split over
/// nodes; outputs are identical for any worker count.
RecoveryReport learn_graph(const SampleSet& s, const LearnConfig& cfg,
                           const Graph* reference = nullptr);

EdgeMetrics score_against(const Graph& learned, const Graph& reference);

/// Exact conditional mutual information I(X_u ; X_added[k] | earlier added),
/// in nats, for each growth step of the trace; the information-theoretic
/// ledger behind the cap argument.
std::vector<double> mi_increment_audit(const IsingModel& model, const NbhdTrace& trace);

const char* to_string(LearnMode m);
const char* to_string(Reconcile r);
const char* to_string(Termination t);

}  // namespace ising
