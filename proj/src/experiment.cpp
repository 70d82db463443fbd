#include "isinglearn/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>

#include "isinglearn/constants.hpp"
#include "isinglearn/errors.hpp"
#include "isinglearn/exact.hpp"
#include "isinglearn/report_io.hpp"
#include "isinglearn/rng.hpp"

namespace ising {

namespace {

using nlohmann::json;

LearnConfig learn_config_for(const ExperimentSpec& spec, const IsingModel& model) {
  if (spec.mode == LearnMode::theoretical) {
    const TheoryConstants c = compute_constants(model.alpha, model.beta, model.h,
                                                std::max(1, model.graph.degree_bound()));
    return LearnConfig::theoretical(c, spec.reconcile);
  }
  return LearnConfig::practical(spec.tau, model.graph.p(), spec.eps, spec.ell_cap,
                                spec.reconcile);
}

SampleSet draw_samples(const ExperimentSpec& spec, const IsingModel& model,
                       const JointTable* table, std::int64_t n, std::uint64_t seed) {
  if (spec.sampler == ExperimentSpec::Sampler::exact) {
    return exact_sampler(*table, n, seed);
  }
  GibbsConfig cfg = spec.gibbs;
  cfg.seed = seed;
  return gibbs_sample(model, n, cfg).samples;
}

}  // namespace

const char* sampler_label(ExperimentSpec::Sampler s) {
  return s == ExperimentSpec::Sampler::exact ? "exact-iid" : "gibbs approximate-iid";
}

ExperimentSpec experiment_from_json(const json& j) {
  if (!j.is_object()) throw DataError("experiment: expected a JSON object");
  if (!j.contains("format_version") || j["format_version"] != kFormatVersion)
    throw DataError("experiment: missing or unsupported format_version");

  ExperimentSpec spec;

  if (!j.contains("generator") || !j["generator"].is_object())
    throw DataError("experiment: missing \"generator\" object");
  const json& g = j["generator"];
  spec.generator.family = family_from_name(g.value("family", std::string("tree")));
  spec.generator.p = g.value("p", 0);
  spec.generator.d = g.value("d", 0);
  spec.generator.sign = sign_from_name(g.value("sign", std::string("ferro")));
  spec.generator.alpha = g.value("alpha", 0.0);
  spec.generator.beta = g.value("beta", 0.0);
  spec.generator.h = g.value("h", 0.0);

  if (j.contains("sampler")) {
    const json& s = j["sampler"];
    const std::string kind = s.value("kind", std::string("exact"));
    if (kind == "exact")
      spec.sampler = ExperimentSpec::Sampler::exact;
    else if (kind == "gibbs")
      spec.sampler = ExperimentSpec::Sampler::gibbs;
    else
      throw DataError("experiment: unknown sampler kind " + kind);
    spec.gibbs.burn_in_sweeps = s.value("burn_in", std::int64_t{-1});
    spec.gibbs.thinning_sweeps = s.value("thinning", std::int64_t{10});
    spec.gibbs.chains = s.value("chains", 1);
    const std::string scan = s.value("scan", std::string("random"));
    if (scan == "random")
      spec.gibbs.scan = GibbsConfig::Scan::random;
    else if (scan == "systematic")
      spec.gibbs.scan = GibbsConfig::Scan::systematic;
    else
      throw DataError("experiment: unknown scan order " + scan);
  }

  if (j.contains("learn")) {
    const json& l = j["learn"];
    const std::string mode = l.value("mode", std::string("practical"));
    if (mode == "practical")
      spec.mode = LearnMode::practical;
    else if (mode == "theoretical")
      spec.mode = LearnMode::theoretical;
    else
      throw DataError("experiment: unknown learn mode " + mode);
    spec.tau = l.value("tau", 0.1);
    spec.eps = l.value("eps", -1.0);
    spec.ell_cap = l.value("ell_cap", std::int64_t{-1});
    const std::string rec = l.value("reconcile", std::string("and"));
    if (rec == "and")
      spec.reconcile = Reconcile::And;
    else if (rec == "or")
      spec.reconcile = Reconcile::Or;
    else
      throw DataError("experiment: unknown reconcile rule " + rec);
  }

  if (!j.contains("sweep") || !j["sweep"].is_object())
    throw DataError("experiment: missing \"sweep\" object");
  const json& sw = j["sweep"];
  const std::string kind = sw.value("kind", std::string(""));
  if (kind == "error") {
    spec.kind = ExperimentSpec::Kind::error;
    if (!sw.contains("n_values") || !sw["n_values"].is_array() || sw["n_values"].empty())
      throw DataError("experiment: error sweep needs a non-empty \"n_values\" array");
    for (const auto& v : sw["n_values"]) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw DataError("experiment: bad n value " + v.dump());
      spec.n_values.push_back(v.get<std::int64_t>());
    }
  } else if (kind == "runtime") {
    spec.kind = ExperimentSpec::Kind::runtime;
    if (!sw.contains("p_values") || !sw["p_values"].is_array() || sw["p_values"].empty())
      throw DataError("experiment: runtime sweep needs a non-empty \"p_values\" array");
    for (const auto& v : sw["p_values"]) {
      if (!v.is_number_integer() || v.get<int>() < 1)
        throw DataError("experiment: bad p value " + v.dump());
      spec.p_values.push_back(v.get<int>());
    }
    if (!sw.contains("n")) throw DataError("experiment: runtime sweep needs \"n\"");
    spec.fixed_n = sw["n"].get<std::int64_t>();
    if (spec.fixed_n < 0) throw DataError("experiment: runtime sweep n must be >= 0");
  } else {
    throw DataError("experiment: sweep kind must be \"error\" or \"runtime\"");
  }

  spec.trials = j.value("trials", 1);
  if (spec.trials < 0) throw DataError("experiment: trials must be >= 0");
  spec.fresh_model_per_trial = j.value("fresh_model_per_trial", false);
  if (j.contains("outputs")) spec.out_csv = j["outputs"].value("csv", std::string(""));
  return spec;
}

ExperimentSpec read_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("experiment file " + path + ": " + e.what());
  }
  return experiment_from_json(j);
}

std::vector<ErrorSweepRow> run_error_sweep(const ExperimentSpec& spec, std::uint64_t seed) {
  if (spec.kind != ExperimentSpec::Kind::error)
    throw UsageError("run_error_sweep called with a runtime sweep spec");

  struct ModelBundle {
    IsingModel model;
    JointTable table;  // only populated for the exact sampler
  };
  auto bundle_for = [&](std::uint64_t model_seed) {
    ModelBundle b{generate_model(spec.generator, model_seed), {}};
    if (spec.sampler == ExperimentSpec::Sampler::exact) b.table = build_joint(b.model);
    return b;
  };

  std::optional<ModelBundle> shared;
  if (!spec.fresh_model_per_trial) shared = bundle_for(derive_seed(seed, 1));

  std::vector<ErrorSweepRow> rows;
  for (std::int64_t n : spec.n_values) {
    for (int trial = 0; trial < spec.trials; ++trial) {
      const std::uint64_t trial_seed = derive_seed(seed, 1000 + static_cast<std::uint64_t>(trial));
      try {
        std::optional<ModelBundle> fresh;
        if (spec.fresh_model_per_trial) fresh = bundle_for(derive_seed(trial_seed, 1));
        const ModelBundle* b = fresh ? &*fresh : &*shared;
        const SampleSet samples =
            draw_samples(spec, b->model, &b->table, n, derive_seed(trial_seed, 2));
        const LearnConfig cfg = learn_config_for(spec, b->model);
        RecoveryReport report = learn_graph(samples, cfg, &b->model.graph);
        rows.push_back({n, trial, report.metrics->exact_recovery, report.metrics->fp,
                        report.metrics->fn, report.timing.learn_seconds});
      } catch (const std::exception& e) {
        std::cerr << "sweep run n=" << n << " trial=" << trial << " failed: " << e.what()
                  << "\n";
      }
    }
  }
  return rows;
}

std::vector<RuntimeSweepRow> run_runtime_sweep(const ExperimentSpec& spec, std::uint64_t seed) {
  if (spec.kind != ExperimentSpec::Kind::runtime)
    throw UsageError("run_runtime_sweep called with an error sweep spec");

  std::vector<RuntimeSweepRow> rows;
  for (int p : spec.p_values) {
    GeneratorSpec gen = spec.generator;
    gen.p = p;
    const std::uint64_t p_seed = derive_seed(derive_seed(seed, 11), static_cast<std::uint64_t>(p));
    const IsingModel model = generate_model(gen, derive_seed(p_seed, 1));
    JointTable table;
    if (spec.sampler == ExperimentSpec::Sampler::exact) table = build_joint(model);

    std::vector<double> times;
    for (int trial = 0; trial < spec.trials; ++trial) {
      const std::uint64_t trial_seed = derive_seed(p_seed, 1000 + static_cast<std::uint64_t>(trial));
      const SampleSet samples = draw_samples(spec, model, &table, spec.fixed_n, trial_seed);
      const LearnConfig cfg = learn_config_for(spec, model);
      const RecoveryReport report = learn_graph(samples, cfg, nullptr);
      times.push_back(report.timing.learn_seconds);
    }
    std::sort(times.begin(), times.end());
    double median = 0.0;
    if (!times.empty()) {
      const std::size_t mid = times.size() / 2;
      median = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    }
    rows.push_back({p, spec.fixed_n, median});
  }
  return rows;
}

void write_error_sweep_csv(const std::vector<ErrorSweepRow>& rows, const ExperimentSpec& spec,
                           std::ostream& out) {
  out << "# format_version=" << kFormatVersion << "\n";
  out << "# sampler=" << sampler_label(spec.sampler) << "\n";
  out << "n,trial,exact_recovery,fp,fn,wall_time\n";
  char buf[32];
  for (const ErrorSweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.wall_time);
    out << r.n << ',' << r.trial << ',' << (r.exact_recovery ? 1 : 0) << ',' << r.fp << ','
        << r.fn << ',' << buf << '\n';
  }
}

void write_runtime_sweep_csv(const std::vector<RuntimeSweepRow>& rows,
                             const ExperimentSpec& spec, std::ostream& out) {
  out << "# format_version=" << kFormatVersion << "\n";
  out << "# sampler=" << sampler_label(spec.sampler) << "\n";
  out << "p,n,wall_time_learn\n";
  char buf[32];
  for (const RuntimeSweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.wall_time_learn);
    out << r.p << ',' << r.n << ',' << buf << '\n';
  }
}

}  // namespace ising
