#include "isinglearn/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isinglearn/errors.hpp"
#include "isinglearn/rng.hpp"

namespace ising {

namespace {

std::vector<std::pair<int, int>> tree_edges(int p, int d, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(p, 0);
  for (int v = 1; v < p; ++v) {
    std::vector<int> eligible;
    for (int w = 0; w < v; ++w)
      if (degree[w] < d) eligible.push_back(w);
    if (eligible.empty())
      throw InfeasibleError("tree generator: degree bound d=" + std::to_string(d) +
                            " cannot host p=" + std::to_string(p) + " nodes");
    const int w = eligible[rng.next_below(eligible.size())];
    edges.emplace_back(w, v);
    ++degree[w];
    ++degree[v];
  }
  return edges;
}

std::vector<std::pair<int, int>> cycle_edges(int p, int d) {
  if (p < 3) throw InfeasibleError("cycle generator: need p >= 3");
  if (d < 2) throw InfeasibleError("cycle generator: need d >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < p; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, p - 1);
  return edges;
}

std::vector<std::pair<int, int>> grid_edges(int p, int d) {
  int rows = 1;
  for (int r = 1; r * r <= p; ++r)
    if (p % r == 0) rows = r;
  const int cols = p / rows;  // rows <= cols by construction
  const int natural = (rows >= 3)              ? 4
                      : (rows == 2 && cols >= 3) ? 3
                      : (rows == 2)              ? 2
                      : (p >= 3)                 ? 2
                                                 : p - 1;
  if (d < natural)
    throw InfeasibleError("grid generator: " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " grid needs d >= " + std::to_string(natural));
  std::vector<std::pair<int, int>> edges;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return edges;
}

std::vector<std::pair<int, int>> regular_edges(int p, int d, Rng& rng) {
  if (d < 1 || d >= p) throw InfeasibleError("regular generator: need 1 <= d < p");
  if ((static_cast<std::int64_t>(p) * d) % 2 != 0)
    throw InfeasibleError("regular generator: p*d must be even");
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(p) * d);
    for (int v = 0; v < p; ++v)
      for (int k = 0; k < d; ++k) stubs.push_back(v);
    for (std::size_t k = stubs.size(); k > 1; --k)
      std::swap(stubs[k - 1], stubs[rng.next_below(k)]);
    std::vector<std::pair<int, int>> edges;
    bool ok = true;
    for (std::size_t k = 0; k + 1 < stubs.size() && ok; k += 2) {
      int a = stubs[k], b = stubs[k + 1];
      if (a == b) ok = false;
      if (a > b) std::swap(a, b);
      edges.emplace_back(a, b);
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return edges;
  }
  throw InfeasibleError("regular generator: no simple pairing found in 200 attempts");
}

std::vector<std::pair<int, int>> erdos_capped_edges(int p, int d, Rng& rng) {
  if (d < 1) throw InfeasibleError("erdos generator: need d >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
  for (std::size_t k = pairs.size(); k > 1; --k)
    std::swap(pairs[k - 1], pairs[rng.next_below(k)]);
  const double prob = p > 1 ? std::min(1.0, static_cast<double>(d) / (p - 1)) : 0.0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(p, 0);
  for (const auto& [i, j] : pairs) {
    const bool take = rng.next_unit() < prob;
    if (take && degree[i] < d && degree[j] < d) {
      edges.emplace_back(i, j);
      ++degree[i];
      ++degree[j];
    }
  }
  return edges;
}

}  // namespace

IsingModel generate_model(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.p < 1) throw DataError("generator: need p >= 1");
  if (!(spec.alpha > 0.0) || !(spec.beta >= spec.alpha))
    throw DataError("generator: need 0 < alpha <= beta");
  if (!(spec.h >= 0.0)) throw DataError("generator: need h >= 0");
  if (spec.d < 0) throw DataError("generator: need d >= 0");

  Rng structure_rng(derive_seed(seed, 1));
  std::vector<std::pair<int, int>> edges;
  switch (spec.family) {
    case Family::tree:
      if (spec.p > 1 && spec.d < 1)
        throw InfeasibleError("tree generator: need d >= 1 for p > 1");
      edges = tree_edges(spec.p, spec.d, structure_rng);
      break;
    case Family::cycle:
      edges = cycle_edges(spec.p, spec.d);
      break;
    case Family::grid:
      edges = grid_edges(spec.p, spec.d);
      break;
    case Family::random_regular:
      edges = regular_edges(spec.p, spec.d, structure_rng);
      break;
    case Family::erdos_capped:
      edges = erdos_capped_edges(spec.p, spec.d, structure_rng);
      break;
  }
  Graph graph(spec.p, std::move(edges), spec.d);

  Rng param_rng(derive_seed(seed, 2));
  std::vector<double> thetas;
  thetas.reserve(graph.edges().size());
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const double mag = spec.alpha + (spec.beta - spec.alpha) * param_rng.next_unit();
    double sign = 1.0;
    if (spec.sign == SignPolicy::anti)
      sign = -1.0;
    else if (spec.sign == SignPolicy::random_sign)
      sign = param_rng.next_spin();
    thetas.push_back(mag * sign);
  }
  std::vector<double> fields;
  fields.reserve(spec.p);
  Rng field_rng(derive_seed(seed, 3));
  for (int v = 0; v < spec.p; ++v) fields.push_back(-spec.h + 2.0 * spec.h * field_rng.next_unit());

  IsingModel model =
      make_model(std::move(graph), thetas, std::move(fields), spec.alpha, spec.beta, spec.h);
  if (!validate_model(model).empty())
    throw std::logic_error("generator produced a model outside its own class");
  return model;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::tree: return "tree";
    case Family::cycle: return "cycle";
    case Family::grid: return "grid";
    case Family::random_regular: return "random-regular";
    case Family::erdos_capped: return "erdos-capped";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "tree") return Family::tree;
  if (name == "cycle") return Family::cycle;
  if (name == "grid") return Family::grid;
  if (name == "random-regular") return Family::random_regular;
  if (name == "erdos-capped") return Family::erdos_capped;
  throw DataError("unknown graph family: " + name);
}

const char* sign_name(SignPolicy s) {
  switch (s) {
    case SignPolicy::ferro: return "ferro";
    case SignPolicy::anti: return "anti";
    case SignPolicy::random_sign: return "random";
  }
  return "?";
}

SignPolicy sign_from_name(const std::string& name) {
  if (name == "ferro") return SignPolicy::ferro;
  if (name == "anti") return SignPolicy::anti;
  if (name == "random") return SignPolicy::random_sign;
  throw DataError("unknown sign policy: " + name);
}

}  // namespace ising
