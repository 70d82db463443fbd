#include "isinglearn/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "isinglearn/constants.hpp"
#include "isinglearn/errors.hpp"
#include "isinglearn/exact.hpp"
#include "isinglearn/parallel.hpp"
#include "isinglearn/rng.hpp"

namespace ising {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_verifiable(const IsingModel& model) {
  if (model.graph.p() > kVerifyNodeCap)
    throw InfeasibleError("verifier: subset grids over p=" + std::to_string(model.graph.p()) +
                          " nodes exceed the cap of " + std::to_string(kVerifyNodeCap));
  const auto violations = validate_model(model);
  if (!violations.empty())
    throw DataError("verifier: model leaves the declared class (" + violations.front().detail +
                    (violations.size() > 1
                         ? " and " + std::to_string(violations.size() - 1) + " more)"
                         : ")"));
}

std::string set_name(std::span<const int> S) {
  std::string s = "{";
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(S[k]);
  }
  return s + "}";
}

// Subsets of pool, sizes 0..cap, lexicographic within a size.
template <class Fn>
void for_each_subset_sized(const std::vector<int>& pool, int cap, Fn&& fn) {
  const int n = static_cast<int>(pool.size());
  cap = std::min(cap, n);
  for (int k = 0; k <= cap; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> subset(k);
    while (true) {
      for (int t = 0; t < k; ++t) subset[t] = pool[idx[t]];
      fn(std::span<const int>(subset));
      int t = k - 1;
      while (t >= 0 && idx[t] == n - k + t) --t;
      if (t < 0) break;
      ++idx[t];
      for (int s = t + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
    }
  }
}

struct Worst {
  double slack = std::numeric_limits<double>::infinity();
  std::int64_t instances = 0;
  std::string witness;

  void consider(double s, const std::string& w) {
    ++instances;
    if (s < slack) {
      slack = s;
      witness = w;
    }
  }
  void merge(const Worst& o) {
    instances += o.instances;
    if (o.slack < slack) {
      slack = o.slack;
      witness = o.witness;
    }
  }
};

CheckResult finish(const std::string& property, const std::string& scope, const Worst& w) {
  CheckResult r;
  r.property = property;
  r.scope = scope;
  r.instances = w.instances;
  if (w.instances == 0) {
    r.worst_slack = 0.0;
    r.pass = true;
    r.witness = "vacuous";
    return r;
  }
  r.worst_slack = w.slack;
  r.pass = w.slack >= -kVerifyTol;
  r.witness = w.witness;
  return r;
}

CheckResult structural_check(const IsingModel& model, const JointTable& table, int subset_cap) {
  const int p = model.graph.p();
  const TheoryConstants consts = compute_constants(model.alpha, model.beta, model.h,
                                                   std::max(1, model.graph.degree_bound()));
  const double threshold = 2.0 * consts.tau_star;
  const int cap = subset_cap < 0 ? p - 1 : subset_cap;

  std::vector<Worst> per_node(p);
  parallel_for(p, [&](std::int64_t ui) {
    const int u = static_cast<int>(ui);
    const auto& nbrs = model.graph.neighbors(u);
    std::vector<int> pool;
    for (int v = 0; v < p; ++v)
      if (v != u) pool.push_back(v);
    for_each_subset_sized(pool, cap, [&](std::span<const int> S) {
      std::vector<int> outside;
      for (int v : nbrs)
        if (std::find(S.begin(), S.end(), v) == S.end()) outside.push_back(v);
      if (outside.empty()) return;  // neighborhood inside S: proposition silent
      const auto stats = exact_pair_stats(table, u, outside, S);
      double best = -std::numeric_limits<double>::infinity();
      int best_i = outside[0];
      for (std::size_t c = 0; c < outside.size(); ++c)
        if (stats[c].influence > best) {
          best = stats[c].influence;
          best_i = outside[c];
        }
      per_node[u].consider(best - threshold, "u=" + std::to_string(u) + " S=" + set_name(S) +
                                                 " best_i=" + std::to_string(best_i) +
                                                 " nu_bar=" + std::to_string(best));
    });
  });
  Worst total;
  for (const Worst& w : per_node) total.merge(w);
  return finish("structural-influence",
                "all (u,S) with |S|<=" + std::to_string(cap) + ", nbhd(u) not within S; bound 2*tau_star",
                total);
}

CheckResult markov_check(const IsingModel& model, const JointTable& table) {
  const int p = model.graph.p();
  std::vector<Worst> per_node(p);
  parallel_for(p, [&](std::int64_t ui) {
    const int u = static_cast<int>(ui);
    const auto& nbrs = model.graph.neighbors(u);
    std::vector<int> rest;
    for (int v = 0; v < p; ++v)
      if (v != u && !model.graph.has_edge(u, v)) rest.push_back(v);
    for_each_subset_sized(rest, static_cast<int>(rest.size()), [&](std::span<const int> T) {
      std::vector<int> S(nbrs.begin(), nbrs.end());
      S.insert(S.end(), T.begin(), T.end());
      std::sort(S.begin(), S.end());
      std::vector<int> outside;
      for (int v : rest)
        if (std::find(T.begin(), T.end(), v) == T.end()) outside.push_back(v);
      if (outside.empty()) return;
      const auto stats = exact_pair_stats(table, u, outside, S);
      for (std::size_t c = 0; c < outside.size(); ++c)
        per_node[u].consider(-std::abs(stats[c].influence),
                             "u=" + std::to_string(u) + " i=" + std::to_string(outside[c]) +
                                 " S=" + set_name(S) +
                                 " nu_bar=" + std::to_string(stats[c].influence));
    });
  });
  Worst total;
  for (const Worst& w : per_node) total.merge(w);
  return finish("markov-zero", "all (u,i,S) with nbhd(u) within S, i outside S+{u}; bound 0",
                total);
}

CheckResult influence_mi_check(const IsingModel& model, const JointTable& table, int subset_cap) {
  const int p = model.graph.p();
  const int cap = subset_cap < 0 ? p - 2 : subset_cap;
  std::vector<Worst> per_node(p);
  parallel_for(p, [&](std::int64_t ui) {
    const int u = static_cast<int>(ui);
    std::vector<int> pool;
    for (int v = 0; v < p; ++v)
      if (v != u) pool.push_back(v);
    for_each_subset_sized(pool, cap, [&](std::span<const int> S) {
      std::vector<int> outside;
      for (int v : pool)
        if (std::find(S.begin(), S.end(), v) == S.end()) outside.push_back(v);
      if (outside.empty()) return;
      const auto stats = exact_pair_stats(table, u, outside, S);
      for (std::size_t c = 0; c < outside.size(); ++c) {
        const double slack =
            stats[c].mi_nats - 0.5 * stats[c].influence * stats[c].influence;
        per_node[u].consider(slack, "u=" + std::to_string(u) + " i=" +
                                        std::to_string(outside[c]) + " S=" + set_name(S) +
                                        " mi=" + std::to_string(stats[c].mi_nats) +
                                        " nu_bar=" + std::to_string(stats[c].influence));
      }
    });
  });
  Worst total;
  for (const Worst& w : per_node) total.merge(w);
  return finish("influence-mi",
                "all (u,i,S) with |S|<=" + std::to_string(cap) + "; bound nu_bar^2/2", total);
}

CheckResult randomness_check(const IsingModel& model, const JointTable& table, int subset_cap) {
  const int p = model.graph.p();
  const TheoryConstants consts = compute_constants(model.alpha, model.beta, model.h,
                                                   std::max(1, model.graph.degree_bound()));
  const int cap = subset_cap < 0 ? p - 1 : subset_cap;
  std::vector<Worst> per_node(p);
  parallel_for(p, [&](std::int64_t ui) {
    const int u = static_cast<int>(ui);
    std::vector<int> pool;
    for (int v = 0; v < p; ++v)
      if (v != u) pool.push_back(v);
    for_each_subset_sized(pool, cap, [&](std::span<const int> S) {
      const double worst = min_conditional_prob(table, u, S);
      per_node[u].consider(worst - consts.delta, "u=" + std::to_string(u) + " S=" + set_name(S) +
                                                     " min_prob=" + std::to_string(worst));
    });
  });
  Worst total;
  for (const Worst& w : per_node) total.merge(w);
  return finish("conditional-randomness",
                "all (u,S,x_S) with |S|<=" + std::to_string(cap) + "; bound delta", total);
}

}  // namespace

bool PropertyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

PropertyReport verify_structural_property(const IsingModel& model, int subset_cap,
                                          const std::string& model_id) {
  check_verifiable(model);
  const auto t0 = std::chrono::steady_clock::now();
  const JointTable table = build_joint(model);
  PropertyReport report;
  report.model_id = model_id;
  report.checks.push_back(structural_check(model, table, subset_cap));
  report.runtime_seconds = seconds_since(t0);
  return report;
}

PropertyReport verify_markov_zero(const IsingModel& model, const std::string& model_id) {
  check_verifiable(model);
  const auto t0 = std::chrono::steady_clock::now();
  const JointTable table = build_joint(model);
  PropertyReport report;
  report.model_id = model_id;
  report.checks.push_back(markov_check(model, table));
  report.runtime_seconds = seconds_since(t0);
  return report;
}

PropertyReport verify_influence_mi(const IsingModel& model, int subset_cap,
                                   const std::string& model_id) {
  check_verifiable(model);
  const auto t0 = std::chrono::steady_clock::now();
  const JointTable table = build_joint(model);
  PropertyReport report;
  report.model_id = model_id;
  report.checks.push_back(influence_mi_check(model, table, subset_cap));
  report.runtime_seconds = seconds_since(t0);
  return report;
}

PropertyReport verify_conditional_randomness(const IsingModel& model, int subset_cap,
                                             const std::string& model_id) {
  check_verifiable(model);
  const auto t0 = std::chrono::steady_clock::now();
  const JointTable table = build_joint(model);
  PropertyReport report;
  report.model_id = model_id;
  report.checks.push_back(randomness_check(model, table, subset_cap));
  report.runtime_seconds = seconds_since(t0);
  return report;
}

PropertyReport verify_all(const IsingModel& model, int subset_cap, const std::string& model_id) {
  check_verifiable(model);
  const auto t0 = std::chrono::steady_clock::now();
  const JointTable table = build_joint(model);
  PropertyReport report;
  report.model_id = model_id;
  report.checks.push_back(structural_check(model, table, subset_cap));
  report.checks.push_back(markov_check(model, table));
  report.checks.push_back(influence_mi_check(model, table, subset_cap));
  report.checks.push_back(randomness_check(model, table, subset_cap));
  report.runtime_seconds = seconds_since(t0);
  return report;
}

namespace {

bool connected(int p, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = p;
  for (const auto& [a, b] : edges) {
    const int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps == 1;
}

struct SuiteGraph {
  std::string name;
  Graph graph;
};

std::vector<SuiteGraph> suite_graphs() {
  std::vector<SuiteGraph> out;
  for (int p = 3; p <= 5; ++p) {
    std::vector<std::pair<int, int>> all_pairs;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) all_pairs.emplace_back(i, j);
    const int np = static_cast<int>(all_pairs.size());
    for (std::uint32_t mask = 1; mask < (1u << np); ++mask) {
      std::vector<std::pair<int, int>> edges;
      std::vector<int> degree(p, 0);
      for (int b = 0; b < np; ++b)
        if ((mask >> b) & 1u) {
          edges.push_back(all_pairs[b]);
          ++degree[all_pairs[b].first];
          ++degree[all_pairs[b].second];
        }
      if (*std::max_element(degree.begin(), degree.end()) > 3) continue;
      if (!connected(p, edges)) continue;
      const int dmax = *std::max_element(degree.begin(), degree.end());
      out.push_back({"p" + std::to_string(p) + "-m" + std::to_string(mask),
                     Graph(p, std::move(edges), dmax)});
    }
  }
  for (int p : {6, 8}) {
    std::vector<std::pair<int, int>> path, cycle, star;
    for (int v = 0; v + 1 < p; ++v) path.emplace_back(v, v + 1);
    cycle = path;
    cycle.emplace_back(0, p - 1);
    for (int v = 1; v < p; ++v) star.emplace_back(0, v);
    out.push_back({"path" + std::to_string(p), Graph(p, std::move(path), 2)});
    out.push_back({"cycle" + std::to_string(p), Graph(p, std::move(cycle), 2)});
    out.push_back({"star" + std::to_string(p), Graph(p, std::move(star), p - 1)});
  }
  return out;
}

constexpr std::uint64_t kSuiteSeed = 0x15139eb5u;

}  // namespace

std::vector<SuiteEntry> default_verifier_suite() {
  struct Setting {
    double alpha, beta, h;
  };
  const Setting settings[2] = {{0.3, 0.3, 0.0}, {0.5, 1.0, 0.2}};
  const auto graphs = suite_graphs();

  std::vector<SuiteEntry> out;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    for (int si = 0; si < 2; ++si) {
      const Setting& st = settings[si];
      for (int rep = 0; rep < 20; ++rep) {
        Rng rng(derive_seed(derive_seed(derive_seed(kSuiteSeed, g), si), rep));
        std::vector<double> thetas;
        for (std::size_t e = 0; e < graphs[g].graph.edges().size(); ++e) {
          const double mag = st.alpha + (st.beta - st.alpha) * rng.next_unit();
          thetas.push_back(mag * rng.next_spin());
        }
        std::vector<double> fields;
        for (int v = 0; v < graphs[g].graph.p(); ++v)
          fields.push_back(-st.h + 2.0 * st.h * rng.next_unit());
        std::ostringstream id;
        id << graphs[g].name << "-a" << st.alpha << "b" << st.beta << "h" << st.h << "-r" << rep;
        out.push_back(
            {id.str(), make_model(graphs[g].graph, thetas, std::move(fields), st.alpha, st.beta,
                                  st.h)});
      }
    }
  }
  return out;
}

}  // namespace ising
