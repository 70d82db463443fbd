#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "isinglearn/generators.hpp"
#include "isinglearn/gibbs.hpp"
#include "isinglearn/learner.hpp"

namespace ising {

/// One declarative experiment: a model family, a sampler, a learner config
/// and a sweep axis. Together with a master seed it fully determines every
/// row of output; per-trial streams are derived by counter so extending the
/// trial count or the sweep axis never perturbs existing rows.
struct ExperimentSpec {
  enum class Sampler { exact, gibbs };
  enum class Kind { error, runtime };

  GeneratorSpec generator;
  Sampler sampler = Sampler::exact;
  GibbsConfig gibbs;  // seed field ignored; per-trial streams are derived

  LearnMode mode = LearnMode::practical;
  double tau = 0.1;
  double eps = -1.0;          // default tau/2
  std::int64_t ell_cap = -1;  // default from (tau, eps, p)
  Reconcile reconcile = Reconcile::And;

  Kind kind = Kind::error;
  std::vector<std::int64_t> n_values;  // error sweep axis
  std::vector<int> p_values;           // runtime sweep axis
  std::int64_t fixed_n = 0;            // runtime sweep sample count
  int trials = 1;
  bool fresh_model_per_trial = false;
  std::string out_csv;
};

ExperimentSpec experiment_from_json(const nlohmann::json& j);
ExperimentSpec read_experiment_file(const std::string& path);

struct ErrorSweepRow {
  std::int64_t n = 0;
  int trial = 0;
  bool exact_recovery = false;
  int fp = 0;
  int fn = 0;
  double wall_time = 0.0;  // learning only; sampling is excluded
};

struct RuntimeSweepRow {
  int p = 0;
  std::int64_t n = 0;
  double wall_time_learn = 0.0;  // median over trials
};

/// Rows in (n_values order, trial) order. Per-run failures are reported on
/// stderr with the run id and skipped; the sweep continues.
std::vector<ErrorSweepRow> run_error_sweep(const ExperimentSpec& spec, std::uint64_t seed);

std::vector<RuntimeSweepRow> run_runtime_sweep(const ExperimentSpec& spec, std::uint64_t seed);

void write_error_sweep_csv(const std::vector<ErrorSweepRow>& rows, const ExperimentSpec& spec,
                           std::ostream& out);
void write_runtime_sweep_csv(const std::vector<RuntimeSweepRow>& rows,
                             const ExperimentSpec& spec, std::ostream& out);

const char* sampler_label(ExperimentSpec::Sampler s);

}  // namespace ising
