#include "isinglearn/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "isinglearn/errors.hpp"
#include "isinglearn/exact.hpp"
#include "isinglearn/parallel.hpp"

namespace ising {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> without(const std::vector<int>& set, int drop) {
  std::vector<int> out;
  out.reserve(set.size() - 1);
  for (int v : set)
    if (v != drop) out.push_back(v);
  return out;
}

}  // namespace

LearnConfig LearnConfig::practical(double tau, int p, double eps, std::int64_t ell_cap,
                                   Reconcile reconcile) {
  LearnConfig cfg;
  cfg.mode = LearnMode::practical;
  cfg.reconcile = reconcile;
  cfg.tau = tau;
  cfg.eps = eps < 0.0 ? tau / 2.0 : eps;
  if (ell_cap < 0) {
    const double gap = cfg.tau - cfg.eps;
    double by_gap = std::floor(2.0 / (gap * gap));
    if (!(by_gap < static_cast<double>(std::numeric_limits<std::int64_t>::max())))
      by_gap = static_cast<double>(std::numeric_limits<std::int64_t>::max());
    cfg.ell_cap = std::min<std::int64_t>(static_cast<std::int64_t>(by_gap), p - 1);
  } else {
    cfg.ell_cap = ell_cap;
  }
  cfg.validate();
  return cfg;
}

LearnConfig LearnConfig::theoretical(const TheoryConstants& c, Reconcile reconcile) {
  LearnConfig cfg;
  cfg.mode = LearnMode::theoretical;
  cfg.reconcile = reconcile;
  cfg.tau = c.tau_star;
  cfg.eps = c.eps_star;
  if (!(cfg.tau > 0.0))
    throw DataError(
        "theoretical threshold underflowed to zero at these bounds; "
        "the guarantee is vacuous here, use practical mode");
  const double ell = std::floor(c.ell_star);
  cfg.ell_cap = ell < static_cast<double>(std::numeric_limits<std::int64_t>::max())
                    ? static_cast<std::int64_t>(ell)
                    : std::numeric_limits<std::int64_t>::max();
  cfg.validate();
  return cfg;
}

void LearnConfig::validate() const {
  if (!(tau > 0.0)) throw DataError("learn config: need tau > 0");
  if (!(eps > 0.0 && eps < tau)) throw DataError("learn config: need 0 < eps < tau");
  if (ell_cap < 0) throw DataError("learn config: need ell_cap >= 0");
}

NbhdTrace learn_neighborhood(const SampleHistogram& h, int u, const LearnConfig& cfg) {
  cfg.validate();
  if (u < 0 || u >= h.p()) throw DataError("learner: node out of range");
  NbhdTrace trace;
  trace.u = u;

  // The estimator packs conditioning keys into 64 bits; growth past that
  // cannot be tabulated, so the effective cap saturates there.
  const std::int64_t cap =
      std::min<std::int64_t>({cfg.ell_cap, h.p() - 1, kMaxConditioning});

  std::vector<int> grown;
  while (true) {
    if (static_cast<std::int64_t>(grown.size()) >= cap) {
      trace.terminated_by = Termination::cap;
      break;
    }
    const std::vector<double> vals = influence_scan(h, u, grown, cfg.signed_influence);
    int best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < h.p(); ++i) {
      if (vals[i] > best_val) {
        best_val = vals[i];
        best = i;
      }
    }
    if (best >= 0 && best_val >= cfg.tau) {
      grown.push_back(best);
      trace.added.emplace_back(best, best_val);
    } else {
      trace.terminated_by = Termination::threshold;
      break;
    }
  }

  std::vector<int> kept;
  if (cfg.sequential_prune) {
    std::vector<int> current = grown;
    std::vector<int> order = grown;
    std::sort(order.begin(), order.end());
    for (int i : order) {
      const double v =
          empirical_influence(tabulate(h, u, i, without(current, i)), cfg.signed_influence);
      if (v < cfg.tau) {
        trace.pruned.emplace_back(i, v);
        current = without(current, i);
      }
    }
    kept = current;
  } else {
    // Every removal test conditions on the frozen post-growth set.
    std::vector<int> order = grown;
    std::sort(order.begin(), order.end());
    for (int i : order) {
      const double v =
          empirical_influence(tabulate(h, u, i, without(grown, i)), cfg.signed_influence);
      if (v < cfg.tau)
        trace.pruned.emplace_back(i, v);
      else
        kept.push_back(i);
    }
  }
  std::sort(kept.begin(), kept.end());
  trace.final_set = std::move(kept);
  return trace;
}

NbhdTrace learn_neighborhood(const SampleSet& s, int u, const LearnConfig& cfg) {
  return learn_neighborhood(SampleHistogram::build(s), u, cfg);
}

EdgeMetrics score_against(const Graph& learned, const Graph& reference) {
  EdgeMetrics m;
  for (const auto& e : learned.edges())
    if (!reference.has_edge(e.first, e.second)) ++m.fp;
  for (const auto& e : reference.edges())
    if (!learned.has_edge(e.first, e.second)) ++m.fn;
  m.hamming = m.fp + m.fn;
  m.exact_recovery = m.hamming == 0;
  return m;
}

RecoveryReport learn_graph(const SampleSet& s, const LearnConfig& cfg, const Graph* reference) {
  cfg.validate();
  if (reference && reference->p() != s.p())
    throw DataError("learner: reference graph p does not match the samples");

  RecoveryReport report;
  report.p = s.p();
  report.n = s.n();
  report.tau = cfg.tau;
  report.eps = cfg.eps;
  report.ell_cap = cfg.ell_cap;
  report.mode = cfg.mode;
  report.reconcile = cfg.reconcile;

  const auto t0 = std::chrono::steady_clock::now();
  const SampleHistogram hist = SampleHistogram::build(s);
  report.traces.resize(s.p());
  parallel_for(s.p(), [&](std::int64_t u) {
    report.traces[u] = learn_neighborhood(hist, static_cast<int>(u), cfg);
  });

  // And: both endpoints must vote for the edge. Or: one vote suffices.
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

std::vector<double> mi_increment_audit(const IsingModel& model, const NbhdTrace& trace) {
  const JointTable table = build_joint(model);
  std::vector<double> out;
  std::vector<int> prefix;
  for (const auto& [node, value] : trace.added) {
    out.push_back(exact_conditional_mi(table, trace.u, node, prefix));
    prefix.push_back(node);
  }
  return out;
}

const char* to_string(LearnMode m) {
  return m == LearnMode::practical ? "practical" : "theoretical";
}
const char* to_string(Reconcile r) { return r == Reconcile::And ? "and" : "or"; }
const char* to_string(Termination t) { return t == Termination::threshold ? "threshold" : "cap"; }

}  // namespace ising
