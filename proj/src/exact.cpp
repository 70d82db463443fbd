#include "isinglearn/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isinglearn/errors.hpp"
#include "isinglearn/parallel.hpp"
#include "isinglearn/rng.hpp"

namespace ising {

namespace {

// Compensated accumulator; stratum masses are sums of up to 2^p exponentials
// and the verifier tolerances sit at 1e-12.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void check_node(const JointTable& t, int u, const char* what) {
  if (u < 0 || u >= t.p)
    throw DataError(std::string("exact: ") + what + " node " + std::to_string(u) +
                    " out of range for p=" + std::to_string(t.p));
}

void check_disjoint_sets(const JointTable& t, int u, std::span<const int> candidates,
                         std::span<const int> S) {
  check_node(t, u, "query");
  std::vector<bool> seen(t.p, false);
  seen[u] = true;
  for (int s : S) {
    check_node(t, s, "conditioning");
    if (seen[s]) throw DataError("exact: node " + std::to_string(s) + " repeated in query");
    seen[s] = true;
  }
  for (int c : candidates) {
    check_node(t, c, "candidate");
    if (seen[c]) throw DataError("exact: node " + std::to_string(c) + " repeated in query");
    seen[c] = true;
  }
}

inline std::uint64_t gather_bits(std::uint64_t mask, std::span<const int> nodes) {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) key |= ((mask >> nodes[k]) & 1u) << k;
  return key;
}

}  // namespace

Condition Condition::of(std::initializer_list<std::pair<int, int>> assignments) {
  Condition c;
  for (const auto& [node, spin] : assignments) {
    if (spin != 1 && spin != -1) throw DataError("condition: spin must be +-1");
    c.terms.emplace_back(node, static_cast<std::int8_t>(spin));
  }
  std::sort(c.terms.begin(), c.terms.end());
  for (std::size_t k = 1; k < c.terms.size(); ++k)
    if (c.terms[k].first == c.terms[k - 1].first)
      throw DataError("condition: node " + std::to_string(c.terms[k].first) + " repeated");
  return c;
}

JointTable build_joint(const IsingModel& model, int cap) {
  const int p = model.graph.p();
  if (p > cap)
    throw InfeasibleError("exact enumeration needs 2^" + std::to_string(p) +
                          " configurations (cap " + std::to_string(cap) +
                          " nodes); use the sequential sampler for larger models");
  if (model.fields.size() != static_cast<std::size_t>(p))
    throw DataError("exact: fields size does not match p");

  struct Term {
    int i, j;
    double theta;
  };
  std::vector<Term> terms;
  for (const auto& [key, theta] : model.couplings)
    if (theta != 0.0) terms.push_back({key.first, key.second, theta});

  JointTable t;
  t.p = p;
  t.log_weights.resize(std::size_t{1} << p);
  const std::int64_t total = std::int64_t{1} << p;
  parallel_for(total, [&](std::int64_t mask) {
    const auto m = static_cast<std::uint64_t>(mask);
    double e = 0.0;
    for (const Term& tm : terms)
      e += (((m >> tm.i) ^ (m >> tm.j)) & 1u) ? -tm.theta : tm.theta;
    for (int k = 0; k < p; ++k) e += ((m >> k) & 1u) ? model.fields[k] : -model.fields[k];
    t.log_weights[mask] = e;
  });

  t.max_log_weight = *std::max_element(t.log_weights.begin(), t.log_weights.end());
  Kahan z;
  for (double lw : t.log_weights) z.add(std::exp(lw - t.max_log_weight));
  t.log_z = t.max_log_weight + std::log(z.sum);
  return t;
}

double conditional_prob(const JointTable& t, int u, int spin, const Condition& cond) {
  check_node(t, u, "query");
  if (spin != 1 && spin != -1) throw DataError("exact: spin must be +-1");
  std::uint64_t cond_mask = 0, cond_bits = 0;
  for (const auto& [node, s] : cond.terms) {
    check_node(t, node, "conditioning");
    if (node == u) throw DataError("exact: conditioning on the query node");
    cond_mask |= std::uint64_t{1} << node;
    if (s > 0) cond_bits |= std::uint64_t{1} << node;
  }
  Kahan all, yes;
  const std::uint64_t total = std::uint64_t{1} << t.p;
  const std::uint64_t want = spin > 0 ? 1u : 0u;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if ((mask & cond_mask) != cond_bits) continue;
    const double w = std::exp(t.log_weights[mask] - t.max_log_weight);
    all.add(w);
    if (((mask >> u) & 1u) == want) yes.add(w);
  }
  if (!(all.sum > 0.0)) throw DataError("exact: conditioning event has zero mass");
  return yes.sum / all.sum;
}

std::vector<PairStats> exact_pair_stats(const JointTable& t, int u,
                                        std::span<const int> candidates,
                                        std::span<const int> S) {
  check_disjoint_sets(t, u, candidates, S);
  const std::size_t nc = candidates.size();
  std::vector<PairStats> out(nc);
  if (nc == 0) return out;

  const std::size_t strata = std::size_t{1} << S.size();
  // cells[(key * nc + c) * 4 + a*2 + b], a = (x_u==+1), b = (x_i==+1)
  std::vector<Kahan> cells(strata * nc * 4);
  const std::uint64_t total_masks = std::uint64_t{1} << t.p;
  for (std::uint64_t mask = 0; mask < total_masks; ++mask) {
    const double w = std::exp(t.log_weights[mask] - t.max_log_weight);
    const std::uint64_t key = gather_bits(mask, S);
    const std::uint64_t a = (mask >> u) & 1u;
    Kahan* base = cells.data() + key * nc * 4;
    for (std::size_t c = 0; c < nc; ++c) {
      const std::uint64_t b = (mask >> candidates[c]) & 1u;
      base[c * 4 + a * 2 + b].add(w);
    }
  }

  Kahan mass;
  for (std::size_t key = 0; key < strata; ++key)
    for (int q = 0; q < 4; ++q) mass.add(cells[key * nc * 4 + q].sum);
  const double total = mass.sum;

  for (std::size_t c = 0; c < nc; ++c) {
    Kahan infl, mi;
    for (std::size_t key = 0; key < strata; ++key) {
      const Kahan* cl = cells.data() + (key * nc + c) * 4;
      const double w00 = cl[0].sum, w01 = cl[1].sum, w10 = cl[2].sum, w11 = cl[3].sum;
      const double m = w00 + w01 + w10 + w11;
      if (!(m > 0.0)) continue;
      const double wi_plus = w01 + w11;
      const double wi_minus = w00 + w10;
      if (wi_plus > 0.0 && wi_minus > 0.0) {
        const double lambda = 2.0 * (wi_plus / m) * (wi_minus / m);
        const double nu = w11 / wi_plus - w10 / wi_minus;
        infl.add((m / total) * lambda * std::abs(nu));
      }
      double kl = 0.0;
      const double qu_plus = (w10 + w11) / m;
      const double qu_minus = (w00 + w01) / m;
      const double qi_plus = wi_plus / m;
      const double qi_minus = wi_minus / m;
      const double qs[4] = {w00 / m, w01 / m, w10 / m, w11 / m};
      const double margs[4] = {qu_minus * qi_minus, qu_minus * qi_plus, qu_plus * qi_minus,
                               qu_plus * qi_plus};
      for (int q = 0; q < 4; ++q)
        if (qs[q] > 0.0) kl += qs[q] * std::log(qs[q] / margs[q]);
      mi.add((m / total) * kl);
    }
    out[c].influence = infl.sum;
    out[c].mi_nats = mi.sum;
  }
  return out;
}

double exact_influence(const JointTable& t, int u, int i, std::span<const int> S) {
  const int cand[1] = {i};
  return exact_pair_stats(t, u, cand, S)[0].influence;
}

double exact_conditional_mi(const JointTable& t, int u, int i, std::span<const int> S) {
  const int cand[1] = {i};
  return exact_pair_stats(t, u, cand, S)[0].mi_nats;
}

double min_conditional_prob(const JointTable& t, int u, std::span<const int> S) {
  check_disjoint_sets(t, u, {}, S);
  const std::size_t strata = std::size_t{1} << S.size();
  std::vector<Kahan> cells(strata * 2);
  const std::uint64_t total_masks = std::uint64_t{1} << t.p;
  for (std::uint64_t mask = 0; mask < total_masks; ++mask) {
    const double w = std::exp(t.log_weights[mask] - t.max_log_weight);
    const std::uint64_t key = gather_bits(mask, S);
    cells[key * 2 + ((mask >> u) & 1u)].add(w);
  }
  double best = 1.0;
  for (std::size_t key = 0; key < strata; ++key) {
    const double wm = cells[key * 2].sum, wp = cells[key * 2 + 1].sum;
    const double m = wm + wp;
    if (!(m > 0.0)) continue;
    best = std::min(best, std::min(wp / m, wm / m));
  }
  return best;
}

double node_entropy_nats(const JointTable& t, int u) {
  check_node(t, u, "query");
  Kahan plus, all;
  const std::uint64_t total_masks = std::uint64_t{1} << t.p;
  for (std::uint64_t mask = 0; mask < total_masks; ++mask) {
    const double w = std::exp(t.log_weights[mask] - t.max_log_weight);
    all.add(w);
    if ((mask >> u) & 1u) plus.add(w);
  }
  const double q = plus.sum / all.sum;
  double hsum = 0.0;
  if (q > 0.0) hsum -= q * std::log(q);
  if (q < 1.0) hsum -= (1.0 - q) * std::log(1.0 - q);
  return hsum;
}

SampleSet exact_sampler(const JointTable& t, std::int64_t n, std::uint64_t seed) {
  if (n < 0) throw DataError("exact sampler: n must be >= 0");
  const std::size_t total = std::size_t{1} << t.p;
  std::vector<double> cdf(total);
  Kahan run;
  for (std::size_t mask = 0; mask < total; ++mask) {
    run.add(std::exp(t.log_weights[mask] - t.log_z));
    cdf[mask] = run.sum;
  }
  cdf.back() = 1.0;

  Rng rng(seed);
  std::vector<std::int8_t> spins(static_cast<std::size_t>(n) * t.p);
  for (std::int64_t r = 0; r < n; ++r) {
    const double x = rng.next_unit();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    const std::uint64_t mask = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(total) - 1));
    for (int k = 0; k < t.p; ++k)
      spins[static_cast<std::size_t>(r) * t.p + k] = ((mask >> k) & 1u) ? 1 : -1;
  }
  return SampleSet(t.p, n, std::move(spins));
}

}  // namespace ising
