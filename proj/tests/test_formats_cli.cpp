#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "isinglearn/errors.hpp"
#include "isinglearn/exact.hpp"
#include "isinglearn/experiment.hpp"
#include "isinglearn/generators.hpp"
#include "isinglearn/learner.hpp"
#include "isinglearn/report_io.hpp"
#include "isinglearn/samples.hpp"
#include "isinglearn/verifier.hpp"
#include "helpers.hpp"

using namespace ising;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string so = "cli_out_" + std::to_string(counter) + ".txt";
  const std::string se = "cli_err_" + std::to_string(counter) + ".txt";
  ++counter;
  const std::string cmd = std::string(ISING_CLI_PATH) + " " + args + " >" + so + " 2>" + se;
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status >= 0 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(so);
  r.err = slurp(se);
  std::remove(so.c_str());
  std::remove(se.c_str());
  return r;
}

json scrub_timing(const std::string& text) {
  json j = json::parse(text);
  j.erase("timing");
  return j;
}

// Drop the final (wall-time) column of every data row.
std::string strip_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      const auto comma = line.rfind(',');
      if (comma != std::string::npos) line.resize(comma);
    }
    out << line << '\n';
  }
  return out.str();
}

GeneratorSpec cycle_spec(int p, double theta) {
  GeneratorSpec s;
  s.family = Family::cycle;
  s.p = p;
  s.d = 2;
  s.sign = SignPolicy::ferro;
  s.alpha = theta;
  s.beta = theta;
  s.h = 0.0;
  return s;
}

}  // namespace

TEST_CASE("model json round-trips every generator family") {
  GeneratorSpec specs[5];
  specs[0] = cycle_spec(6, 0.7);
  specs[1] = {Family::tree, 7, 3, SignPolicy::random_sign, 0.3, 0.9, 0.1};
  specs[2] = {Family::grid, 6, 4, SignPolicy::anti, 0.5, 0.5, 0.0};
  specs[3] = {Family::random_regular, 8, 3, SignPolicy::ferro, 0.4, 0.8, 0.2};
  specs[4] = {Family::erdos_capped, 9, 3, SignPolicy::random_sign, 0.2, 0.6, 0.0};
  for (const GeneratorSpec& spec : specs) {
    const IsingModel m = generate_model(spec, 11);
    const IsingModel back = model_from_json(model_to_json(m));
    CHECK(back.graph == m.graph);
    CHECK(back.couplings == m.couplings);
    CHECK(back.fields == m.fields);
    CHECK(back.alpha == m.alpha);
    CHECK(back.beta == m.beta);
    CHECK(back.h == m.h);
  }
}

TEST_CASE("model json reader reports precise failures") {
  const json good = model_to_json(testutil::edge_model(0.5));

  json j = good;
  j.erase("format_version");
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("format_version"), DataError);

  j = good;
  j["format_version"] = 2;
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("unsupported"), DataError);

  j = good;
  j.erase("p");
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("\"p\""), DataError);

  j = good;
  j["edges"][0].erase("theta");
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("theta"), DataError);

  j = good;
  j["fields"] = "nope";
  CHECK_THROWS_AS(model_from_json(j), DataError);

  j = good;
  j["alpha"] = "x";
  CHECK_THROWS_AS(model_from_json(j), DataError);

  CHECK_THROWS_AS(model_from_json(json::array()), DataError);
}

TEST_CASE("model json reader accepts unnormalized edge order") {
  json j = model_to_json(testutil::path_model({0.7, -0.4}));
  std::swap(j["edges"][0], j["edges"][1]);
  std::swap(j["edges"][0]["i"], j["edges"][0]["j"]);  // also flip one pair
  const IsingModel m = model_from_json(j);
  CHECK(m.coupling(0, 1) == 0.7);
  CHECK(m.coupling(2, 1) == -0.4);
}

TEST_CASE("recovery report serializes its decisions") {
  const IsingModel m = testutil::edge_model(0.8);
  const SampleSet s = exact_sampler(build_joint(m), 40000, 31);
  const RecoveryReport r = learn_graph(s, LearnConfig::practical(0.1, 2), &m.graph);
  const json j = report_to_json(r);
  CHECK(j["format_version"] == 1);
  CHECK(j["p"] == 2);
  CHECK(j["n"] == 40000);
  CHECK(j["config"]["mode"] == "practical");
  CHECK(j["config"]["tau"] == 0.1);
  CHECK(j["edges"].size() == 1);
  CHECK(j["edges"][0] == json::array({0, 1}));
  CHECK(j["traces"].size() == 2);
  CHECK(j["traces"][0]["u"] == 0);
  CHECK(j["traces"][0]["final"] == json::array({1}));
  // ell_cap defaults to p - 1 = 1, so the recovered neighbor fills the cap.
  CHECK(j["traces"][0]["terminated_by"] == "cap");
  CHECK(j["metrics"]["exact_recovery"] == true);
  CHECK(j.contains("timing"));

  const std::string csv = report_edges_csv(r);
  CHECK(csv.find("# format_version=1\n") == 0);
  CHECK(csv.find("u,v\n") != std::string::npos);
  CHECK(csv.find("0,1\n") != std::string::npos);
}

TEST_CASE("property report renders in all three formats") {
  const PropertyReport r = verify_all(testutil::edge_model(0.5, 0.5, 0.5), -1, "edge");
  const std::string table = property_report_table(r);
  CHECK(table.find("model: edge") != std::string::npos);
  CHECK(table.find("[ok]") != std::string::npos);
  CHECK(table.find("all checks passed") != std::string::npos);

  const json j = property_report_to_json(r);
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() == 4);
  CHECK(j["model_id"] == "edge");

  const std::string csv = property_report_csv(r);
  CHECK(csv.find("# format_version=1\n") == 0);
  CHECK(csv.find("model_id,property,worst_slack,pass,instances,witness") != std::string::npos);
  CHECK(csv.find("structural-influence") != std::string::npos);
}

TEST_CASE("experiment specs parse and validate") {
  const json good = {
      {"format_version", 1},
      {"generator",
       {{"family", "cycle"}, {"p", 5}, {"d", 2}, {"alpha", 0.7}, {"beta", 0.7}}},
      {"sampler", {{"kind", "exact"}}},
      {"learn", {{"mode", "practical"}, {"tau", 0.1}}},
      {"sweep", {{"kind", "error"}, {"n_values", {300, 600}}}},
      {"trials", 2},
      {"outputs", {{"csv", "sweep.csv"}}}};
  const ExperimentSpec spec = experiment_from_json(good);
  CHECK(spec.generator.p == 5);
  CHECK(spec.kind == ExperimentSpec::Kind::error);
  CHECK(spec.n_values == std::vector<std::int64_t>({300, 600}));
  CHECK(spec.trials == 2);
  CHECK(spec.out_csv == "sweep.csv");

  json j = good;
  j.erase("format_version");
  CHECK_THROWS_AS(experiment_from_json(j), DataError);
  j = good;
  j["sweep"].erase("n_values");
  CHECK_THROWS_AS(experiment_from_json(j), DataError);
  j = good;
  j["sweep"]["kind"] = "runtime";  // runtime without p_values
  CHECK_THROWS_AS(experiment_from_json(j), DataError);
  j = good;
  j["trials"] = -1;
  CHECK_THROWS_AS(experiment_from_json(j), DataError);
  j = good;
  j["sampler"]["kind"] = "magic";
  CHECK_THROWS_AS(experiment_from_json(j), DataError);
}

TEST_CASE("error sweeps are repeatable row for row") {
  ExperimentSpec spec;
  spec.generator = cycle_spec(4, 0.8);
  spec.tau = 0.1;
  spec.n_values = {500, 1500};
  spec.trials = 2;
  const auto a = run_error_sweep(spec, 77);
  const auto b = run_error_sweep(spec, 77);
  REQUIRE(a.size() == 4);
  REQUIRE(b.size() == 4);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].n == b[k].n);
    CHECK(a[k].trial == b[k].trial);
    CHECK(a[k].exact_recovery == b[k].exact_recovery);
    CHECK(a[k].fp == b[k].fp);
    CHECK(a[k].fn == b[k].fn);
  }
  CHECK(a[0].n == 500);
  CHECK(a[1].trial == 1);
  CHECK(a[2].n == 1500);

  std::ostringstream csv;
  write_error_sweep_csv(a, spec, csv);
  const std::string text = csv.str();
  CHECK(text.find("# format_version=1\n") == 0);
  CHECK(text.find("# sampler=exact-iid\n") != std::string::npos);
  CHECK(text.find("n,trial,exact_recovery,fp,fn,wall_time\n") != std::string::npos);
}

// ---- subprocess checks against the installed command-line tool ----

TEST_CASE("cli: constants reproduces the hand-checked numbers") {
  const RunResult r = run_cli("constants --alpha 0.2 --beta 0.2 --h 0 --d 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("delta     = 0.150597") != std::string::npos);
  CHECK(r.out.find("tau_star  = 8.53896e-14") != std::string::npos);
  CHECK(r.out.find("overflow (exceeds the u64 sentinel)") != std::string::npos);
}

TEST_CASE("cli: misuse exits with the usage code and guidance") {
  spit("cli_tiny.samples", "2 1\n1 -1\n");
  RunResult r = run_cli("learn --samples cli_tiny.samples");
  CHECK(r.code == 1);
  CHECK(r.err.find("needs --tau") != std::string::npos);

  r = run_cli("learn --samples cli_tiny.samples --mode theoretical");
  CHECK(r.code == 1);
  CHECK(r.err.find("pass --model") != std::string::npos);

  r = run_cli("nonsense");
  CHECK(r.code == 1);

  r = run_cli("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("generate") != std::string::npos);
  std::remove("cli_tiny.samples");
}

TEST_CASE("cli: data problems exit 2, infeasible requests exit 3") {
  RunResult r = run_cli("learn --samples cli_missing.samples --tau 0.1");
  CHECK(r.code == 2);

  // Enumeration past the cap: generation is fine, exact sampling is not.
  r = run_cli("generate --family cycle --p 21 --d 2 --alpha 0.5 --beta 0.5 --out cli_big.model");
  CHECK(r.code == 0);
  r = run_cli("sample --model cli_big.model --n 10 --sampler exact");
  CHECK(r.code == 3);
  std::remove("cli_big.model");
}

TEST_CASE("cli: generate, sample, learn, verify round trip") {
  RunResult r = run_cli(
      "generate --family cycle --p 6 --d 2 --alpha 0.8 --beta 0.8 --sign ferro "
      "--out cli_rt.model --seed 5");
  CHECK(r.code == 0);
  r = run_cli("sample --model cli_rt.model --n 50000 --sampler exact --out cli_rt.samples "
              "--seed 5");
  CHECK(r.code == 0);
  r = run_cli("learn --samples cli_rt.samples --tau 0.1 --model cli_rt.model");
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["metrics"]["exact_recovery"] == true);
  CHECK(report["method"] == "greedy");
  CHECK(report["edges"].size() == 6);

  r = run_cli("verify --model cli_rt.model");
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);

  r = run_cli("verify --model cli_rt.model --format json");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["pass"] == true);

  std::remove("cli_rt.model");
  std::remove("cli_rt.samples");
}

TEST_CASE("cli: binary and text samples learn identically") {
  RunResult r = run_cli(
      "generate --family tree --p 7 --d 3 --alpha 0.7 --beta 0.9 --sign random "
      "--out cli_bt.model --seed 9");
  CHECK(r.code == 0);
  r = run_cli("sample --model cli_bt.model --n 30000 --out cli_bt.txt --seed 9");
  CHECK(r.code == 0);
  r = run_cli("sample --model cli_bt.model --n 30000 --binary --out cli_bt.bin --seed 9");
  CHECK(r.code == 0);

  const RunResult a = run_cli("learn --samples cli_bt.txt --tau 0.1 --model cli_bt.model");
  const RunResult b = run_cli("learn --samples cli_bt.bin --tau 0.1 --model cli_bt.model");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(scrub_timing(a.out) == scrub_timing(b.out));

  std::remove("cli_bt.model");
  std::remove("cli_bt.txt");
  std::remove("cli_bt.bin");
}

TEST_CASE("cli: output does not depend on the worker count") {
  RunResult r = run_cli(
      "generate --family grid --p 8 --d 4 --alpha 0.6 --beta 0.6 --out cli_wk.model --seed 4");
  CHECK(r.code == 0);
  r = run_cli("sample --model cli_wk.model --n 20000 --sampler gibbs --burn-in 200 "
              "--thinning 3 --out cli_wk1.samples --seed 4 --workers 1");
  CHECK(r.code == 0);
  r = run_cli("sample --model cli_wk.model --n 20000 --sampler gibbs --burn-in 200 "
              "--thinning 3 --out cli_wk2.samples --seed 4 --workers 2");
  CHECK(r.code == 0);
  CHECK(slurp("cli_wk1.samples") == slurp("cli_wk2.samples"));

  const RunResult a =
      run_cli("learn --samples cli_wk1.samples --tau 0.08 --model cli_wk.model --workers 1");
  const RunResult b =
      run_cli("learn --samples cli_wk1.samples --tau 0.08 --model cli_wk.model --workers 2");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(scrub_timing(a.out) == scrub_timing(b.out));

  std::remove("cli_wk.model");
  std::remove("cli_wk1.samples");
  std::remove("cli_wk2.samples");
}

TEST_CASE("cli: sweep runs are byte-stable modulo wall time") {
  const json spec = {
      {"format_version", 1},
      {"generator",
       {{"family", "cycle"}, {"p", 5}, {"d", 2}, {"alpha", 0.7}, {"beta", 0.7}}},
      {"sampler", {{"kind", "exact"}}},
      {"learn", {{"mode", "practical"}, {"tau", 0.1}}},
      {"sweep", {{"kind", "error"}, {"n_values", {300, 900}}}},
      {"trials", 2},
      {"outputs", {{"csv", "cli_sweep_a.csv"}}}};
  spit("cli_sweep.spec", spec.dump(2));

  RunResult r = run_cli("sweep --spec cli_sweep.spec --seed 10");
  CHECK(r.code == 0);
  r = run_cli("sweep --spec cli_sweep.spec --out cli_sweep_b.csv --seed 10");
  CHECK(r.code == 0);
  const std::string a = slurp("cli_sweep_a.csv");
  const std::string b = slurp("cli_sweep_b.csv");
  CHECK(!a.empty());
  CHECK(strip_last_column(a) == strip_last_column(b));

  std::remove("cli_sweep.spec");
  std::remove("cli_sweep_a.csv");
  std::remove("cli_sweep_b.csv");
}

TEST_CASE("cli: influence dump lists every free candidate") {
  spit("cli_inf.samples", "3 4\n1 1 1\n1 -1 1\n-1 1 -1\n-1 -1 -1\n");
  const RunResult r = run_cli("influence --samples cli_inf.samples --u 0 --cond 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("u,i,cond,influence") != std::string::npos);
  CHECK(r.out.find("0,1,2,") != std::string::npos);   // one data row: candidate 1
  CHECK(r.out.find("0,2,") == std::string::npos);     // conditioning node excluded
  std::remove("cli_inf.samples");
}
