// Command-line front end: model generation, sampling, learning, property
// verification, the constants calculator and sweep experiments. Every
// subcommand is deterministic in (arguments, --seed); worker count changes
// timing fields only.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isinglearn/baselines.hpp"
#include "isinglearn/constants.hpp"
#include "isinglearn/errors.hpp"
#include "isinglearn/exact.hpp"
#include "isinglearn/experiment.hpp"
#include "isinglearn/generators.hpp"
#include "isinglearn/gibbs.hpp"
#include "isinglearn/learner.hpp"
#include "isinglearn/model.hpp"
#include "isinglearn/parallel.hpp"
#include "isinglearn/report_io.hpp"
#include "isinglearn/samples.hpp"
#include "isinglearn/verifier.hpp"

namespace {

using ising::DataError;
using ising::InfeasibleError;
using ising::UsageError;
using nlohmann::json;

void write_text_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << text;
}

std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct GlobalOpts {
  std::uint64_t seed = 1;
  int workers = 0;  // 0 keeps the runtime default
  std::string format;
};

// ---- generate ----

struct GenerateArgs {
  std::string family = "tree";
  int p = 0;
  int d = 0;
  std::string sign = "ferro";
  double alpha = 0.0;
  double beta = 0.0;
  double h = 0.0;
  std::string out;
};

void run_generate(const GenerateArgs& a, const GlobalOpts& g) {
  ising::GeneratorSpec spec;
  spec.family = ising::family_from_name(a.family);
  spec.p = a.p;
  spec.d = a.d;
  spec.sign = ising::sign_from_name(a.sign);
  spec.alpha = a.alpha;
  spec.beta = a.beta;
  spec.h = a.h;
  const ising::IsingModel model = ising::generate_model(spec, g.seed);
  write_text_output(ising::model_to_json(model).dump(2) + "\n", a.out);
  if (!a.out.empty())
    std::cerr << "wrote " << ising::family_name(spec.family) << " model (p=" << model.graph.p()
              << ", " << model.graph.edges().size() << " edges) to " << a.out << "\n";
}

// ---- sample ----

struct SampleArgs {
  std::string model;
  std::int64_t n = 0;
  std::string sampler = "exact";
  std::int64_t burn_in = -1;
  std::int64_t thinning = 10;
  int chains = 1;
  std::string scan = "random";
  bool binary = false;
  std::string out;
};

void run_sample(const SampleArgs& a, const GlobalOpts& g) {
  const ising::IsingModel model = ising::read_model_file(a.model);
  if (a.n < 0) throw UsageError("sample: need --n >= 0");
  std::optional<ising::SampleSet> samples;
  if (a.sampler == "exact") {
    const ising::JointTable table = ising::build_joint(model);
    samples = ising::exact_sampler(table, a.n, g.seed);
  } else if (a.sampler == "gibbs") {
    ising::GibbsConfig cfg;
    cfg.burn_in_sweeps = a.burn_in;
    cfg.thinning_sweeps = a.thinning;
    cfg.chains = a.chains;
    cfg.seed = g.seed;
    if (a.scan == "random")
      cfg.scan = ising::GibbsConfig::Scan::random;
    else if (a.scan == "systematic")
      cfg.scan = ising::GibbsConfig::Scan::systematic;
    else
      throw UsageError("sample: --scan must be random or systematic");
    ising::GibbsResult result = ising::gibbs_sample(model, a.n, cfg);
    if (result.mixing_warning)
      std::cerr << "warning: beta*d = " << fmt6(model.beta * model.graph.degree_bound())
                << " is large; the chain may mix slowly, consider longer burn-in\n";
    samples = std::move(result.samples);
  } else {
    throw UsageError("sample: --sampler must be exact or gibbs");
  }
  if (a.binary && a.out.empty()) throw UsageError("sample: --binary needs --out");
  if (a.out.empty()) {
    ising::write_samples_text(*samples, std::cout);
  } else {
    ising::write_samples_file(*samples, a.out, a.binary);
    std::cerr << "wrote " << samples->n() << " samples (p=" << samples->p() << ") to " << a.out
              << "\n";
  }
}

// ---- learn ----

struct LearnArgs {
  std::string samples;
  std::string method = "greedy";
  std::string mode = "practical";
  double tau = -1.0;
  double eps = -1.0;
  std::int64_t ell_cap = -1;
  std::string reconcile = "and";
  bool signed_influence = false;
  bool sequential_prune = false;
  std::string model;  // reference; also the bounds source in theoretical mode
  int d_max = 3;
  double indep_eps = -1.0;
  std::string out;
  std::string edges_csv;
};

ising::Reconcile reconcile_from(const std::string& name) {
  if (name == "and") return ising::Reconcile::And;
  if (name == "or") return ising::Reconcile::Or;
  throw UsageError("--reconcile must be and or or");
}

void run_learn(const LearnArgs& a, const GlobalOpts& g) {
  const ising::SampleSet samples = ising::read_samples_file(a.samples);
  std::optional<ising::IsingModel> reference;
  if (!a.model.empty()) reference = ising::read_model_file(a.model);
  const ising::Graph* ref_graph = reference ? &reference->graph : nullptr;

  ising::RecoveryReport report{};
  if (a.method == "greedy") {
    ising::LearnConfig cfg;
    if (a.mode == "practical") {
      if (a.tau < 0.0)
        throw UsageError(
            "practical mode needs --tau (the influence threshold); use --mode theoretical "
            "with --model to derive it from the class bounds instead");
      cfg = ising::LearnConfig::practical(a.tau, samples.p(), a.eps, a.ell_cap,
                                          reconcile_from(a.reconcile));
    } else if (a.mode == "theoretical") {
      if (!reference)
        throw UsageError(
            "theoretical mode reads the class bounds (alpha, beta, h, d) from a model file; "
            "pass --model");
      const ising::TheoryConstants c =
          ising::compute_constants(reference->alpha, reference->beta, reference->h,
                                   std::max(1, reference->graph.degree_bound()));
      cfg = ising::LearnConfig::theoretical(c, reconcile_from(a.reconcile));
    } else {
      throw UsageError("--mode must be practical or theoretical");
    }
    cfg.signed_influence = a.signed_influence;
    cfg.sequential_prune = a.sequential_prune;
    report = ising::learn_graph(samples, cfg, ref_graph);
  } else if (a.method == "exhaustive") {
    ising::BaselineConfig cfg;
    cfg.d_max = a.d_max;
    cfg.indep_eps = a.indep_eps >= 0.0 ? a.indep_eps : (a.tau >= 0.0 ? a.tau : 0.05);
    cfg.reconcile = reconcile_from(a.reconcile);
    report = ising::exhaustive_learn(samples, cfg, ref_graph);
  } else if (a.method == "chow-liu") {
    const auto t0 = std::chrono::steady_clock::now();
    ising::Graph learned = ising::chow_liu(samples);
    report.timing.learn_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.p = samples.p();
    report.n = samples.n();
    if (ref_graph) report.metrics = ising::score_against(learned, *ref_graph);
    report.learned = std::move(learned);
  } else {
    throw UsageError("--method must be greedy, exhaustive or chow-liu");
  }

  const std::string format = g.format.empty() ? "json" : g.format;
  if (format == "json") {
    json j = ising::report_to_json(report);
    j["method"] = a.method;
    write_text_output(j.dump(2) + "\n", a.out);
  } else if (format == "csv") {
    write_text_output(ising::report_edges_csv(report), a.out);
  } else {
    throw UsageError("learn: --format must be json or csv");
  }
  if (!a.edges_csv.empty()) write_text_output(ising::report_edges_csv(report), a.edges_csv);
}

// ---- verify ----

struct VerifyArgs {
  std::string model;
  bool suite = false;
  int subset_cap = -1;
  std::string check = "all";
  std::int64_t limit = -1;
  std::string out;
};

ising::PropertyReport run_checks(const ising::IsingModel& model, const VerifyArgs& a,
                                 const std::string& id) {
  if (a.check == "all") return ising::verify_all(model, a.subset_cap, id);
  if (a.check == "structural" || a.check == "structural-influence")
    return ising::verify_structural_property(model, a.subset_cap, id);
  if (a.check == "markov" || a.check == "markov-zero") return ising::verify_markov_zero(model, id);
  if (a.check == "mi" || a.check == "influence-mi")
    return ising::verify_influence_mi(model, a.subset_cap, id);
  if (a.check == "randomness" || a.check == "conditional-randomness")
    return ising::verify_conditional_randomness(model, a.subset_cap, id);
  throw UsageError("--check must be all, structural, markov, influence-mi or randomness");
}

void run_verify(const VerifyArgs& a, const GlobalOpts& g) {
  const std::string format = g.format.empty() ? "table" : g.format;
  if (!a.suite && a.model.empty())
    throw UsageError("verify: pass --model <file> or --suite");
  if (a.suite && !a.model.empty())
    throw UsageError("verify: --model and --suite are mutually exclusive");

  if (!a.suite) {
    const ising::IsingModel model = ising::read_model_file(a.model);
    const ising::PropertyReport report = run_checks(model, a, a.model);
    if (format == "table")
      write_text_output(ising::property_report_table(report), a.out);
    else if (format == "json")
      write_text_output(ising::property_report_to_json(report).dump(2) + "\n", a.out);
    else if (format == "csv")
      write_text_output(ising::property_report_csv(report), a.out);
    else
      throw UsageError("verify: --format must be table, json or csv");
    return;
  }

  // Suite mode: aggregate each property's worst slack across all models.
  struct Agg {
    std::string property;
    double worst_slack = 0.0;
    std::string worst_model;
    std::int64_t instances = 0;
    bool pass = true;
    bool seen = false;
  };
  std::vector<Agg> aggs;
  auto merge = [&](const ising::PropertyReport& r) {
    for (const ising::CheckResult& c : r.checks) {
      Agg* slot = nullptr;
      for (Agg& x : aggs)
        if (x.property == c.property) slot = &x;
      if (!slot) {
        aggs.push_back({c.property, 0.0, "", 0, true, false});
        slot = &aggs.back();
      }
      if (!slot->seen || c.worst_slack < slot->worst_slack) {
        slot->worst_slack = c.worst_slack;
        slot->worst_model = r.model_id;
        slot->seen = true;
      }
      slot->instances += c.instances;
      slot->pass = slot->pass && c.pass;
    }
  };

  std::vector<ising::SuiteEntry> suite = ising::default_verifier_suite();
  if (a.limit >= 0 && a.limit < static_cast<std::int64_t>(suite.size()))
    suite.erase(suite.begin() + a.limit, suite.end());
  for (const ising::SuiteEntry& entry : suite) merge(run_checks(entry.model, a, entry.id));

  bool all_pass = true;
  for (const Agg& x : aggs) all_pass = all_pass && x.pass;

  std::ostringstream text;
  if (format == "table") {
    text << "suite: " << suite.size() << " models\n";
    for (const Agg& x : aggs) {
      char slack[32];
      std::snprintf(slack, sizeof slack, "%.3e", x.worst_slack);
      text << (x.pass ? "  [ok]   " : "  [FAIL] ") << x.property << "  worst_slack=" << slack
           << "  instances=" << x.instances << "  worst_model=" << x.worst_model << "\n";
    }
    text << (all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
  } else if (format == "csv") {
    text << "# format_version=" << ising::kFormatVersion << "\n";
    text << "property,worst_slack,pass,instances,worst_model\n";
    for (const Agg& x : aggs) {
      char slack[32];
      std::snprintf(slack, sizeof slack, "%.17g", x.worst_slack);
      text << x.property << ',' << slack << ',' << (x.pass ? 1 : 0) << ',' << x.instances << ','
           << x.worst_model << '\n';
    }
  } else if (format == "json") {
    json j;
    j["format_version"] = ising::kFormatVersion;
    j["models"] = suite.size();
    j["pass"] = all_pass;
    json checks = json::array();
    for (const Agg& x : aggs)
      checks.push_back({{"property", x.property},
                        {"worst_slack", x.worst_slack},
                        {"pass", x.pass},
                        {"instances", x.instances},
                        {"worst_model", x.worst_model}});
    j["checks"] = std::move(checks);
    text << j.dump(2) << "\n";
  } else {
    throw UsageError("verify: --format must be table, json or csv");
  }
  write_text_output(text.str(), a.out);
}

// ---- constants ----

struct ConstantsArgs {
  double alpha = 0.0;
  double beta = 0.0;
  double h = 0.0;
  int d = 0;
  std::int64_t p = 64;
  double zeta = 0.1;
  double ell = -1.0;  // default ell_star
  std::string out;
};

void run_constants(const ConstantsArgs& a, const GlobalOpts& g) {
  const ising::TheoryConstants c = ising::compute_constants(a.alpha, a.beta, a.h, a.d);
  const double ell = a.ell >= 0.0 ? a.ell : c.ell_star;
  std::optional<ising::SampleBound> upper;
  if (c.tau_star > 0.0 && std::isfinite(ell))
    upper = ising::required_samples_upper(ell, c.eps_star, c.delta, a.p, a.zeta);
  std::optional<double> lower;
  if (static_cast<double>(a.p) * a.d > 8.0)
    lower = ising::sample_lower_bound(a.alpha, a.beta, a.d, a.p);

  const std::string format = g.format.empty() ? "table" : g.format;
  std::ostringstream text;
  if (format == "table") {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", c.delta);
    text << "delta     = " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.6g", c.tau_star);
    text << "tau_star  = " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.6g", c.eps_star);
    text << "eps_star  = " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.6g", c.ell_star);
    text << "ell_star  = " << buf << "\n";
    text << "n_upper(ell=" << fmt6(ell) << ", eps=eps_star, p=" << a.p << ", zeta=" << a.zeta
         << ") = ";
    if (!upper)
      text << "undefined (tau_star underflowed)\n";
    else if (upper->overflow)
      text << "overflow (exceeds the u64 sentinel)\n";
    else
      text << upper->n << "\n";
    text << "n_lower(p=" << a.p << ") = ";
    if (!lower)
      text << "undefined (needs p*d > 8)\n";
    else
      text << fmt6(*lower) << "\n";
  } else if (format == "json") {
    json j;
    j["format_version"] = ising::kFormatVersion;
    j["delta"] = c.delta;
    j["tau_star"] = c.tau_star;
    j["eps_star"] = c.eps_star;
    j["ell_star"] = c.ell_star;
    j["d"] = c.d;
    j["p"] = a.p;
    j["zeta"] = a.zeta;
    j["ell"] = ell;
    if (upper)
      j["n_upper"] = {{"n", upper->n}, {"overflow", upper->overflow}};
    else
      j["n_upper"] = nullptr;
    if (lower)
      j["n_lower"] = *lower;
    else
      j["n_lower"] = nullptr;
    text << j.dump(2) << "\n";
  } else {
    throw UsageError("constants: --format must be table or json");
  }
  write_text_output(text.str(), a.out);
}

// ---- sweep ----

struct SweepArgs {
  std::string spec;
  std::string out;
};

void run_sweep(const SweepArgs& a, const GlobalOpts& g) {
  const ising::ExperimentSpec spec = ising::read_experiment_file(a.spec);
  const std::string out_path = !a.out.empty() ? a.out : spec.out_csv;
  std::ostringstream text;
  std::size_t rows = 0;
  if (spec.kind == ising::ExperimentSpec::Kind::error) {
    const auto r = ising::run_error_sweep(spec, g.seed);
    ising::write_error_sweep_csv(r, spec, text);
    rows = r.size();
  } else {
    const auto r = ising::run_runtime_sweep(spec, g.seed);
    ising::write_runtime_sweep_csv(r, spec, text);
    rows = r.size();
  }
  write_text_output(text.str(), out_path);
  if (!out_path.empty()) std::cerr << "wrote " << rows << " rows to " << out_path << "\n";
}

// ---- influence ----

struct InfluenceArgs {
  std::string samples;
  int u = -1;
  std::vector<int> cond;
  bool signed_influence = false;
  std::string out;
};

void run_influence(const InfluenceArgs& a, const GlobalOpts& g) {
  const ising::SampleSet samples = ising::read_samples_file(a.samples);
  if (a.u < 0 || a.u >= samples.p()) throw UsageError("influence: --u out of range");
  std::vector<int> cond = a.cond;
  std::sort(cond.begin(), cond.end());
  cond.erase(std::unique(cond.begin(), cond.end()), cond.end());
  const ising::SampleHistogram hist = ising::SampleHistogram::build(samples);
  const std::vector<double> values =
      ising::influence_scan(hist, a.u, cond, a.signed_influence);

  std::string cond_label;
  for (std::size_t k = 0; k < cond.size(); ++k) {
    if (k) cond_label += ';';
    cond_label += std::to_string(cond[k]);
  }
  const std::string format = g.format.empty() ? "csv" : g.format;
  if (format != "csv") throw UsageError("influence: only --format csv is supported");
  std::ostringstream text;
  text << "# format_version=" << ising::kFormatVersion << "\n";
  text << "u,i,cond,influence\n";
  char buf[40];
  for (int i = 0; i < samples.p(); ++i) {
    if (i == a.u) continue;
    if (std::binary_search(cond.begin(), cond.end(), i)) continue;
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    text << a.u << ',' << i << ',' << cond_label << ',' << buf << '\n';
  }
  write_text_output(text.str(), a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising model structure learning toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  // --h is a model parameter here, so help must not claim -h.
  app.set_help_flag("--help", "Print help and exit");

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Master seed; per-trial streams are derived from it")
      ->capture_default_str();
  app.add_option("--workers", g.workers, "Worker thread count (0 keeps the runtime default)")
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format: json|csv (table where supported)");

  GenerateArgs gen;
  CLI::App* c_gen = app.add_subcommand("generate", "Generate a model from a named family");
  c_gen->set_help_flag("--help", "Print help and exit");
  c_gen->add_option("--family", gen.family, "tree|cycle|grid|random-regular|erdos-capped")
      ->capture_default_str();
  c_gen->add_option("--p", gen.p, "Node count")->required();
  c_gen->add_option("--d", gen.d, "Degree bound")->required();
  c_gen->add_option("--sign", gen.sign, "ferro|anti|random")->capture_default_str();
  c_gen->add_option("--alpha", gen.alpha, "Min coupling magnitude")->required();
  c_gen->add_option("--beta", gen.beta, "Max coupling magnitude")->required();
  c_gen->add_option("--h", gen.h, "Max field magnitude")->capture_default_str();
  c_gen->add_option("--out", gen.out, "Model file path (stdout when omitted)");

  SampleArgs smp;
  CLI::App* c_smp = app.add_subcommand("sample", "Draw samples from a model file");
  c_smp->set_help_flag("--help", "Print help and exit");
  c_smp->add_option("--model", smp.model, "Model file")->required();
  c_smp->add_option("--n", smp.n, "Sample count")->required();
  c_smp->add_option("--sampler", smp.sampler, "exact|gibbs")->capture_default_str();
  c_smp->add_option("--burn-in", smp.burn_in, "Gibbs burn-in sweeps (-1: 1000*p)")
      ->capture_default_str();
  c_smp->add_option("--thinning", smp.thinning, "Gibbs sweeps between retained draws")
      ->capture_default_str();
  c_smp->add_option("--chains", smp.chains, "Independent gibbs chains")->capture_default_str();
  c_smp->add_option("--scan", smp.scan, "random|systematic site order")->capture_default_str();
  c_smp->add_flag("--binary", smp.binary, "Write the packed binary format (needs --out)");
  c_smp->add_option("--out", smp.out, "Samples file path (stdout text when omitted)");

  LearnArgs lrn;
  CLI::App* c_lrn = app.add_subcommand("learn", "Reconstruct a graph from samples");
  c_lrn->set_help_flag("--help", "Print help and exit");
  c_lrn->add_option("--samples", lrn.samples, "Samples file (text or packed)")->required();
  c_lrn->add_option("--method", lrn.method, "greedy|exhaustive|chow-liu")->capture_default_str();
  c_lrn->add_option("--mode", lrn.mode, "practical|theoretical (greedy only)")
      ->capture_default_str();
  c_lrn->add_option("--tau", lrn.tau, "Influence threshold (required in practical mode)");
  c_lrn->add_option("--eps", lrn.eps, "Accuracy slack (default tau/2)");
  c_lrn->add_option("--ell-cap", lrn.ell_cap, "Growth cap (default from tau, eps)");
  c_lrn->add_option("--reconcile", lrn.reconcile, "and|or neighborhood votes")
      ->capture_default_str();
  c_lrn->add_flag("--signed", lrn.signed_influence, "Signed influence average (experimental)");
  c_lrn->add_flag("--sequential-prune", lrn.sequential_prune,
                  "Prune against the shrinking set (experimental)");
  c_lrn->add_option("--model", lrn.model,
                    "Reference model: enables edge metrics, required in theoretical mode");
  c_lrn->add_option("--d-max", lrn.d_max, "Exhaustive search degree cap")->capture_default_str();
  c_lrn->add_option("--indep-eps", lrn.indep_eps,
                    "Exhaustive residual threshold (default --tau, else 0.05)");
  c_lrn->add_option("--out", lrn.out, "Report path (stdout when omitted)");
  c_lrn->add_option("--edges-csv", lrn.edges_csv, "Also write the edge list as CSV");

  VerifyArgs ver;
  CLI::App* c_ver = app.add_subcommand("verify", "Check exact structural properties of a model");
  c_ver->set_help_flag("--help", "Print help and exit");
  c_ver->add_option("--model", ver.model, "Model file");
  c_ver->add_flag("--suite", ver.suite, "Run the built-in randomized suite instead");
  c_ver->add_option("--subset-cap", ver.subset_cap, "Max |S| per check (-1: all)")
      ->capture_default_str();
  c_ver->add_option("--check", ver.check, "all|structural|markov|influence-mi|randomness")
      ->capture_default_str();
  c_ver->add_option("--limit", ver.limit, "Suite entry cap (-1: all)")->capture_default_str();
  c_ver->add_option("--out", ver.out, "Report path (stdout when omitted)");

  ConstantsArgs con;
  CLI::App* c_con = app.add_subcommand("constants", "Guarantee constants and sample bounds");
  c_con->set_help_flag("--help", "Print help and exit");
  c_con->add_option("--alpha", con.alpha, "Min coupling magnitude")->required();
  c_con->add_option("--beta", con.beta, "Max coupling magnitude")->required();
  c_con->add_option("--h", con.h, "Max field magnitude")->required();
  c_con->add_option("--d", con.d, "Degree bound")->required();
  c_con->add_option("--p", con.p, "Node count for the sample bounds")->capture_default_str();
  c_con->add_option("--zeta", con.zeta, "Failure probability")->capture_default_str();
  c_con->add_option("--ell", con.ell, "Conditioning size for n_upper (default ell_star)");
  c_con->add_option("--out", con.out, "Output path (stdout when omitted)");

  SweepArgs swp;
  CLI::App* c_swp = app.add_subcommand("sweep", "Run an experiment spec file");
  c_swp->set_help_flag("--help", "Print help and exit");
  c_swp->add_option("--spec", swp.spec, "Experiment spec (JSON)")->required();
  c_swp->add_option("--out", swp.out, "CSV path (overrides the spec's outputs.csv)");

  InfluenceArgs inf;
  CLI::App* c_inf = app.add_subcommand("influence", "Dump empirical influence estimates as CSV");
  c_inf->set_help_flag("--help", "Print help and exit");
  c_inf->add_option("--samples", inf.samples, "Samples file")->required();
  c_inf->add_option("--u", inf.u, "Center node")->required();
  c_inf->add_option("--cond", inf.cond, "Conditioning nodes")->delimiter(',');
  c_inf->add_flag("--signed", inf.signed_influence, "Signed influence average");
  c_inf->add_option("--out", inf.out, "Output path (stdout when omitted)");

  // Worker count applies before any subcommand body runs.
  auto apply_workers = [&] {
    if (g.workers > 0) ising::set_workers(g.workers);
  };
  c_gen->callback([&] { apply_workers(), run_generate(gen, g); });
  c_smp->callback([&] { apply_workers(), run_sample(smp, g); });
  c_lrn->callback([&] { apply_workers(), run_learn(lrn, g); });
  c_ver->callback([&] { apply_workers(), run_verify(ver, g); });
  c_con->callback([&] { apply_workers(), run_constants(con, g); });
  c_swp->callback([&] { apply_workers(), run_sweep(swp, g); });
  c_inf->callback([&] { apply_workers(), run_influence(inf, g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ising::kExitOk : ising::kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ising::kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ising::kExitInfeasible;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ising::kExitData;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ising::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ising::kExitData;
  }
  return ising::kExitOk;
}
