#include "isinglearn/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "isinglearn/errors.hpp"
#include "isinglearn/estimator.hpp"
#include "isinglearn/parallel.hpp"

namespace ising {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t candidate_sets(int p, int d_max) {
  // sum_k C(p-1, k) for k <= d_max; saturating, only used for guard messages
  std::uint64_t total = 0;
  for (int k = 0; k <= d_max; ++k) {
    double c = 1.0;
    for (int t = 0; t < k; ++t) c *= static_cast<double>(p - 1 - t) / (t + 1);
    if (c > 1e18) return std::numeric_limits<std::uint64_t>::max();
    total += static_cast<std::uint64_t>(c);
  }
  return total;
}

// Visit k-subsets of pool in lexicographic order until visit returns true.
bool for_each_subset(const std::vector<int>& pool, int k,
                     const std::function<bool(std::span<const int>)>& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> subset(k);
  const int n = static_cast<int>(pool.size());
  if (k > n) return false;
  while (true) {
    for (int t = 0; t < k; ++t) subset[t] = pool[idx[t]];
    if (visit(subset)) return true;
    int t = k - 1;
    while (t >= 0 && idx[t] == n - k + t) --t;
    if (t < 0) return false;
    ++idx[t];
    for (int s = t + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
  }
}

}  // namespace

std::vector<std::vector<int>> exhaustive_neighborhoods(int p, const InfluenceFn& influences,
                                                       const BaselineConfig& cfg) {
  if (p > cfg.max_p || cfg.d_max > cfg.max_d)
    throw InfeasibleError("exhaustive search over ~" +
                          std::to_string(candidate_sets(p, cfg.d_max)) +
                          " candidate sets per node rejected (p=" + std::to_string(p) +
                          " > " + std::to_string(cfg.max_p) + " or d_max=" +
                          std::to_string(cfg.d_max) + " > " + std::to_string(cfg.max_d) + ")");
  if (cfg.d_max < 0) throw DataError("exhaustive: d_max must be >= 0");

  std::vector<std::vector<int>> out(p);
  parallel_for(p, [&](std::int64_t ui) {
    const int u = static_cast<int>(ui);
    std::vector<int> pool;
    for (int v = 0; v < p; ++v)
      if (v != u) pool.push_back(v);

    std::vector<int> fallback;
    double fallback_worst = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int k = 0; k <= std::min(cfg.d_max, p - 1) && !found; ++k) {
      found = for_each_subset(pool, k, [&](std::span<const int> C) {
        const std::vector<double> vals = influences(u, C);
        std::vector<bool> inside(p, false);
        inside[u] = true;
        for (int c : C) inside[c] = true;
        double worst = 0.0;
        for (int i = 0; i < p; ++i)
          if (!inside[i]) worst = std::max(worst, vals[i]);
        if (worst < fallback_worst) {
          fallback_worst = worst;
          fallback.assign(C.begin(), C.end());
        }
        if (worst <= cfg.indep_eps) {
          out[u].assign(C.begin(), C.end());
          return true;
        }
        return false;
      });
    }
    if (!found) out[u] = fallback;
  });
  return out;
}

RecoveryReport exhaustive_learn(const SampleSet& s, const BaselineConfig& cfg,
                                const Graph* reference) {
  if (reference && reference->p() != s.p())
    throw DataError("exhaustive: reference graph p does not match the samples");

  RecoveryReport report;
  report.p = s.p();
  report.n = s.n();
  report.tau = cfg.indep_eps;
  report.eps = cfg.indep_eps / 2.0;
  report.ell_cap = cfg.d_max;
  report.mode = LearnMode::practical;
  report.reconcile = cfg.reconcile;

  const auto t0 = std::chrono::steady_clock::now();
  const SampleHistogram hist = SampleHistogram::build(s);
  const auto nbhds = exhaustive_neighborhoods(
      s.p(), [&](int u, std::span<const int> C) { return influence_scan(hist, u, C); }, cfg);

  report.traces.resize(s.p());
  for (int u = 0; u < s.p(); ++u) {
    report.traces[u].u = u;
    report.traces[u].final_set = nbhds[u];
    std::sort(report.traces[u].final_set.begin(), report.traces[u].final_set.end());
  }

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < s.p(); ++u) {
    for (int v : report.traces[u].final_set) {
      if (v <= u) continue;
      const auto& back = report.traces[v].final_set;
      const bool mutual = std::binary_search(back.begin(), back.end(), u);
      if (cfg.reconcile == Reconcile::And ? mutual : true) edges.emplace_back(u, v);
    }
  }
  if (cfg.reconcile == Reconcile::Or) {
    for (int u = 0; u < s.p(); ++u)
      for (int v : report.traces[u].final_set)
        if (v < u) edges.emplace_back(v, u);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  std::vector<int> degree(s.p(), 0);
  for (const auto& [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  const int dmax = edges.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  report.learned = Graph(s.p(), std::move(edges), dmax);
  report.timing.learn_seconds = seconds_since(t0);

  if (reference) {
    const auto t1 = std::chrono::steady_clock::now();
    report.metrics = score_against(report.learned, *reference);
    report.timing.score_seconds = seconds_since(t1);
  }
  return report;
}

std::vector<std::vector<double>> pairwise_mi_nats(const SampleSet& s) {
  if (s.n() < 1) throw DataError("pairwise mi: need at least one sample");
  const int p = s.p();
  const SampleHistogram hist = SampleHistogram::build(s);
  const std::int64_t m = hist.patterns();
  const double n = static_cast<double>(hist.n());

  std::vector<std::vector<double>> mi(p, std::vector<double>(p, 0.0));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) pairs.emplace_back(i, j);

  parallel_for(static_cast<std::int64_t>(pairs.size()), [&](std::int64_t k) {
    const auto [i, j] = pairs[k];
    std::uint64_t cells[4] = {0, 0, 0, 0};  // [a*2+b], a = x_i==+1, b = x_j==+1
    for (std::int64_t t = 0; t < m; ++t)
      cells[hist.spin_bit(t, i) * 2 + hist.spin_bit(t, j)] += hist.weight(t);
    const double ri[2] = {static_cast<double>(cells[0] + cells[1]),
                          static_cast<double>(cells[2] + cells[3])};
    const double cj[2] = {static_cast<double>(cells[0] + cells[2]),
                          static_cast<double>(cells[1] + cells[3])};
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double c = static_cast<double>(cells[a * 2 + b]);
        if (c > 0.0) v += (c / n) * std::log(c * n / (ri[a] * cj[b]));
      }
    mi[i][j] = mi[j][i] = v;
  });
  return mi;
}

Graph chow_liu(const SampleSet& s) {
  const int p = s.p();
  const auto mi = pairwise_mi_nats(s);

  struct Cand {
    double mi;
    int i, j;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) cands.push_back({mi[i][j], i, j});
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.mi != b.mi) return a.mi > b.mi;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<int> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(p, 0);
  for (const Cand& c : cands) {
    if (static_cast<int>(edges.size()) == p - 1) break;
    const int ra = find(c.i), rb = find(c.j);
    if (ra == rb) continue;
    parent[ra] = rb;
    edges.emplace_back(c.i, c.j);
    ++degree[c.i];
    ++degree[c.j];
  }
  const int dmax = edges.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  return Graph(p, std::move(edges), dmax);
}

}  // namespace ising
