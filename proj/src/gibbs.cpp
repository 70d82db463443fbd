#include "isinglearn/gibbs.hpp"

#include <cmath>
#include <string>

#include "isinglearn/errors.hpp"
#include "isinglearn/rng.hpp"

namespace ising {

namespace {

struct SiteTerm {
  int neighbor;
  double theta;
};

std::vector<std::vector<SiteTerm>> site_terms(const IsingModel& model) {
  std::vector<std::vector<SiteTerm>> terms(model.graph.p());
  for (int u = 0; u < model.graph.p(); ++u)
    for (int v : model.graph.neighbors(u)) terms[u].push_back({v, model.coupling(u, v)});
  return terms;
}

inline double plus_prob(double local_field) {
  // sigma(2 s) = 1 / (1 + exp(-2 s)); safe at both extremes.
  return 1.0 / (1.0 + std::exp(-2.0 * local_field));
}

}  // namespace

double gibbs_update_prob(const IsingModel& model, int u, std::span<const std::int8_t> spins) {
  if (u < 0 || u >= model.graph.p()) throw DataError("gibbs: node out of range");
  if (spins.size() != static_cast<std::size_t>(model.graph.p()))
    throw DataError("gibbs: spin vector size mismatch");
  double s = model.fields[u];
  for (int v : model.graph.neighbors(u)) s += model.coupling(u, v) * spins[v];
  return plus_prob(s);
}

GibbsResult gibbs_sample(const IsingModel& model, std::int64_t n, const GibbsConfig& cfg) {
  const int p = model.graph.p();
  if (n < 0) throw DataError("gibbs: n must be >= 0");
  if (cfg.chains < 1) throw DataError("gibbs: chains must be >= 1");
  if (cfg.thinning_sweeps < 1) throw DataError("gibbs: thinning must be >= 1 sweep");
  const std::int64_t burn = cfg.burn_in_sweeps >= 0 ? cfg.burn_in_sweeps : 1000 * p;

  const auto terms = site_terms(model);
  const bool warn = model.beta * model.graph.degree_bound() >= 2.5;

  std::vector<std::int8_t> all(static_cast<std::size_t>(n) * p);
  std::vector<int> chain_of_row(n);

  std::int64_t row0 = 0;
  for (int c = 0; c < cfg.chains; ++c) {
    const std::int64_t rows =
        n / cfg.chains + (c < static_cast<int>(n % cfg.chains) ? 1 : 0);
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(c)));
    std::vector<std::int8_t> x(p);
    for (int k = 0; k < p; ++k) x[k] = rng.next_spin();

    auto update_site = [&](int u) {
      double s = model.fields[u];
      for (const SiteTerm& tm : terms[u]) s += tm.theta * x[tm.neighbor];
      x[u] = rng.next_unit() < plus_prob(s) ? std::int8_t{1} : std::int8_t{-1};
    };
    auto sweep = [&] {
      for (int t = 0; t < p; ++t) {
        const int site = cfg.scan == GibbsConfig::Scan::systematic
                             ? t
                             : static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p)));
        update_site(site);
      }
    };

    for (std::int64_t s = 0; s < burn; ++s) sweep();
    for (std::int64_t r = 0; r < rows; ++r) {
      for (std::int64_t s = 0; s < cfg.thinning_sweeps; ++s) sweep();
      std::copy(x.begin(), x.end(), all.begin() + (row0 + r) * p);
      chain_of_row[row0 + r] = c;
    }
    row0 += rows;
  }

  return {SampleSet(p, n, std::move(all)), std::move(chain_of_row), warn};
}

}  // namespace ising
