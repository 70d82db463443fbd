#include "isinglearn/model.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "isinglearn/errors.hpp"

namespace ising {

namespace {

std::string edge_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

double IsingModel::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = couplings.find({i, j});
  return it == couplings.end() ? 0.0 : it->second;
}

IsingModel make_model(Graph graph, const std::vector<double>& edge_thetas,
                      std::vector<double> fields, double alpha, double beta, double h) {
  if (edge_thetas.size() != graph.edges().size())
    throw DataError("model: got " + std::to_string(edge_thetas.size()) + " couplings for " +
                    std::to_string(graph.edges().size()) + " edges");
  if (fields.size() != static_cast<std::size_t>(graph.p()))
    throw DataError("model: got " + std::to_string(fields.size()) + " fields for p=" +
                    std::to_string(graph.p()));
  IsingModel m{std::move(graph), {}, std::move(fields), alpha, beta, h};
  for (std::size_t k = 0; k < edge_thetas.size(); ++k)
    m.couplings[m.graph.edges()[k]] = edge_thetas[k];
  return m;
}

std::vector<Violation> validate_model(const IsingModel& model) {
  std::vector<Violation> out;
  if (model.fields.size() != static_cast<std::size_t>(model.graph.p()))
    throw DataError("model: fields size " + std::to_string(model.fields.size()) +
                    " does not match p=" + std::to_string(model.graph.p()));

  for (const auto& e : model.graph.edges()) {
    const double t = model.coupling(e.first, e.second);
    const double mag = std::abs(t);
    if (mag < model.alpha)
      out.push_back({Violation::Kind::coupling_range,
                     "edge " + edge_name(e.first, e.second) + ": |theta|=" + num(mag) +
                         " < alpha=" + num(model.alpha)});
    else if (mag > model.beta)
      out.push_back({Violation::Kind::coupling_range,
                     "edge " + edge_name(e.first, e.second) + ": |theta|=" + num(mag) +
                         " > beta=" + num(model.beta)});
  }
  for (const auto& [key, t] : model.couplings) {
    if (t != 0.0 && !model.graph.has_edge(key.first, key.second))
      out.push_back({Violation::Kind::non_edge_coupling,
                     "nonzero coupling theta=" + num(t) + " on non-edge " +
                         edge_name(key.first, key.second)});
  }
  for (int i = 0; i < model.graph.p(); ++i) {
    if (std::abs(model.fields[i]) > model.h)
      out.push_back({Violation::Kind::field_range,
                     "node " + std::to_string(i) + ": |theta|=" + num(std::abs(model.fields[i])) +
                         " > h=" + num(model.h)});
  }
  for (int i = 0; i < model.graph.p(); ++i) {
    if (model.graph.degree(i) > model.graph.degree_bound())
      out.push_back({Violation::Kind::degree_bound,
                     "node " + std::to_string(i) + " degree " +
                         std::to_string(model.graph.degree(i)) + " > d=" +
                         std::to_string(model.graph.degree_bound())});
  }
  return out;
}

}  // namespace ising
