#include "isinglearn/report_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "isinglearn/errors.hpp"

namespace ising {

namespace {

using nlohmann::json;

void require_version(const json& j, const char* what) {
  if (!j.is_object()) throw DataError(std::string(what) + ": expected a JSON object");
  if (!j.contains("format_version"))
    throw DataError(std::string(what) + ": missing format_version");
  if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != kFormatVersion)
    throw DataError(std::string(what) + ": unsupported format_version " +
                    j["format_version"].dump());
}

double finite_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw DataError(where + ": expected a number, got " + j.dump());
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw DataError(where + ": non-finite value");
  return v;
}

int int_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw DataError(where + ": missing field \"" + key + "\"");
  if (!j[key].is_number_integer())
    throw DataError(where + ": field \"" + key + "\" must be an integer");
  return j[key].get<int>();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json model_to_json(const IsingModel& model) {
  json j;
  j["format_version"] = kFormatVersion;
  j["p"] = model.graph.p();
  j["d"] = model.graph.degree_bound();
  j["alpha"] = model.alpha;
  j["beta"] = model.beta;
  j["h"] = model.h;
  json edges = json::array();
  for (const auto& e : model.graph.edges()) {
    edges.push_back({{"i", e.first}, {"j", e.second}, {"theta", model.coupling(e.first, e.second)}});
  }
  j["edges"] = std::move(edges);
  j["fields"] = model.fields;
  return j;
}

IsingModel model_from_json(const json& j) {
  require_version(j, "model");
  const int p = int_field(j, "p", "model");
  const int d = int_field(j, "d", "model");
  for (const char* key : {"alpha", "beta", "h"})
    if (!j.contains(key)) throw DataError(std::string("model: missing field \"") + key + "\"");
  const double alpha = finite_number(j["alpha"], "model.alpha");
  const double beta = finite_number(j["beta"], "model.beta");
  const double h = finite_number(j["h"], "model.h");

  if (!j.contains("edges") || !j["edges"].is_array())
    throw DataError("model: missing or non-array \"edges\"");
  std::vector<std::pair<int, int>> edges;
  std::vector<double> thetas;
  int idx = 0;
  for (const auto& e : j["edges"]) {
    const std::string where = "model.edges[" + std::to_string(idx++) + "]";
    if (!e.is_object()) throw DataError(where + ": expected an object");
    const int a = int_field(e, "i", where);
    const int b = int_field(e, "j", where);
    if (!e.contains("theta")) throw DataError(where + ": missing field \"theta\"");
    edges.emplace_back(a, b);
    thetas.push_back(finite_number(e["theta"], where + ".theta"));
  }

  if (!j.contains("fields") || !j["fields"].is_array())
    throw DataError("model: missing or non-array \"fields\"");
  std::vector<double> fields;
  idx = 0;
  for (const auto& f : j["fields"])
    fields.push_back(finite_number(f, "model.fields[" + std::to_string(idx++) + "]"));

  // make_model expects thetas aligned to the normalized edge order; align by
  // sorting the (edge, theta) pairs the same way the Graph will.
  std::vector<std::pair<std::pair<int, int>, double>> paired;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [a, b] = edges[k];
    if (a > b) std::swap(a, b);
    paired.push_back({{a, b}, thetas[k]});
  }
  std::sort(paired.begin(), paired.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<int, int>> sorted_edges;
  std::vector<double> sorted_thetas;
  for (const auto& [e, t] : paired) {
    sorted_edges.push_back(e);
    sorted_thetas.push_back(t);
  }
  Graph graph(p, std::move(sorted_edges), d);
  return make_model(std::move(graph), sorted_thetas, std::move(fields), alpha, beta, h);
}

void write_model_file(const IsingModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << model_to_json(model).dump(2) << '\n';
  if (!out) throw DataError("write failed: " + path);
}

IsingModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("model file " + path + ": " + e.what());
  }
  return model_from_json(j);
}

json report_to_json(const RecoveryReport& report) {
  json j;
  j["format_version"] = kFormatVersion;
  j["p"] = report.p;
  j["n"] = report.n;
  j["config"] = {{"mode", to_string(report.mode)},
                 {"tau", report.tau},
                 {"eps", report.eps},
                 {"ell_cap", report.ell_cap},
                 {"reconcile", to_string(report.reconcile)}};
  if (!report.samples_label.empty()) j["samples_label"] = report.samples_label;

  json edges = json::array();
  for (const auto& e : report.learned.edges()) edges.push_back({e.first, e.second});
  j["edges"] = std::move(edges);

  json traces = json::array();
  for (const NbhdTrace& t : report.traces) {
    json added = json::array();
    for (const auto& [node, value] : t.added) added.push_back({{"node", node}, {"value", value}});
    json pruned = json::array();
    for (const auto& [node, value] : t.pruned)
      pruned.push_back({{"node", node}, {"value", value}});
    traces.push_back({{"u", t.u},
                      {"added", std::move(added)},
                      {"pruned", std::move(pruned)},
                      {"final", t.final_set},
                      {"terminated_by", to_string(t.terminated_by)}});
  }
  j["traces"] = std::move(traces);

  if (report.metrics) {
    j["metrics"] = {{"exact_recovery", report.metrics->exact_recovery},
                    {"fp", report.metrics->fp},
                    {"fn", report.metrics->fn},
                    {"hamming", report.metrics->hamming}};
  }
  j["timing"] = {{"learn_seconds", report.timing.learn_seconds},
                 {"score_seconds", report.timing.score_seconds}};
  return j;
}

std::string report_edges_csv(const RecoveryReport& report) {
  std::ostringstream out;
  out << "# format_version=" << kFormatVersion << "\n";
  out << "u,v\n";
  for (const auto& e : report.learned.edges()) out << e.first << ',' << e.second << '\n';
  return out.str();
}

json property_report_to_json(const PropertyReport& report) {
  json j;
  j["format_version"] = kFormatVersion;
  j["model_id"] = report.model_id;
  j["pass"] = report.pass();
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"property", c.property},
                      {"scope", c.scope},
                      {"worst_slack", c.worst_slack},
                      {"pass", c.pass},
                      {"instances", c.instances},
                      {"witness", c.witness}});
  }
  j["checks"] = std::move(checks);
  j["runtime_seconds"] = report.runtime_seconds;
  return j;
}

std::string property_report_table(const PropertyReport& report) {
  std::ostringstream out;
  out << "model: " << (report.model_id.empty() ? "(unnamed)" : report.model_id) << "\n";
  for (const CheckResult& c : report.checks) {
    char slack[32];
    std::snprintf(slack, sizeof slack, "%.3e", c.worst_slack);
    out << (c.pass ? "  [ok]   " : "  [FAIL] ") << c.property << "  worst_slack=" << slack
        << "  instances=" << c.instances << "\n";
    if (!c.pass) out << "         worst: " << c.witness << "\n";
  }
  out << (report.pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
  return out.str();
}

std::string property_report_csv(const PropertyReport& report) {
  std::ostringstream out;
  out << "# format_version=" << kFormatVersion << "\n";
  out << "model_id,property,worst_slack,pass,instances,witness\n";
  for (const CheckResult& c : report.checks) {
    out << csv_quote(report.model_id) << ',' << csv_quote(c.property) << ',';
    char slack[32];
    std::snprintf(slack, sizeof slack, "%.17g", c.worst_slack);
    out << slack << ',' << (c.pass ? 1 : 0) << ',' << c.instances << ','
        << csv_quote(c.witness) << '\n';
  }
  return out.str();
}

}  // namespace ising
