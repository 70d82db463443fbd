#pragma once

#include <string>
#include <vector>

#include "isinglearn/model.hpp"

namespace ising {

inline constexpr double kVerifyTol = 1e-12;
/// Full subset grids cost p * 2^p * 2^(p-1) work; refuse beyond this.
inline constexpr int kVerifyNodeCap = 12;

struct CheckResult {
  std::string property;
  std::string scope;
  // Signed margin; a clean pass has worst_slack >= 0 and pass is evaluated
  // as worst_slack >= -kVerifyTol. Per property the margin is:
  //   structural-influence     min over instances of (max_i nu-bar - 2 tau*)
  //   markov-zero              -max over instances of |nu-bar|
  //   influence-mi             min over instances of (I - nu-bar^2 / 2)
  //   conditional-randomness   min over instances of (P - delta)
  double worst_slack = 0.0;
  bool pass = false;
  std::int64_t instances = 0;
  std::string witness;  // worst instance, human-readable
};

struct PropertyReport {
  std::string model_id;
  std::vector<CheckResult> checks;
  double runtime_seconds = 0.0;
  bool pass() const;
};

/// Whenever the neighborhood of u is not inside S, some neighbor outside S
/// carries averaged influence >= 2 tau*. subset_cap < 0 means all of S.
PropertyReport verify_structural_property(const IsingModel& model, int subset_cap = -1,
                                          const std::string& model_id = "");

/// Conditioning on any superset of the neighborhood kills the influence of
/// every remaining node.
PropertyReport verify_markov_zero(const IsingModel& model, const std::string& model_id = "");

/// I(X_u; X_i | X_S) >= nu-bar^2 / 2 on the full (u, i, S) grid.
PropertyReport verify_influence_mi(const IsingModel& model, int subset_cap = -1,
                                   const std::string& model_id = "");

/// Every conditional spin probability is at least delta.
PropertyReport verify_conditional_randomness(const IsingModel& model, int subset_cap = -1,
                                             const std::string& model_id = "");

/// All four checks over one shared enumeration table.
PropertyReport verify_all(const IsingModel& model, int subset_cap = -1,
                          const std::string& model_id = "");

struct SuiteEntry {
  std::string id;
  IsingModel model;
};

/// Frozen randomized family the acceptance checks sweep: every connected
/// graph on 3..5 nodes with max degree <= 3, plus paths, cycles and stars on
/// 6 and 8 nodes; couplings drawn uniform in [alpha, beta] with independent
/// signs, fields uniform in [-h, h]; 20 draws per graph per bound setting,
/// settings (0.3, 0.3, 0) and (0.5, 1.0, 0.2).
std::vector<SuiteEntry> default_verifier_suite();

}  // namespace ising
