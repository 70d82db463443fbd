#include "isinglearn/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "isinglearn/errors.hpp"
#include "isinglearn/parallel.hpp"

namespace ising {

namespace {

std::vector<int> checked_cond(int p, int u, std::span<const int> S, int other = -1) {
  if (u < 0 || u >= p) throw DataError("estimator: node " + std::to_string(u) + " out of range");
  if (S.size() > static_cast<std::size_t>(kMaxConditioning))
    throw DataError("estimator: conditioning set of size " + std::to_string(S.size()) +
                    " exceeds cap " + std::to_string(kMaxConditioning));
  std::vector<int> cond(S.begin(), S.end());
  std::sort(cond.begin(), cond.end());
  for (std::size_t k = 0; k < cond.size(); ++k) {
    if (cond[k] < 0 || cond[k] >= p)
      throw DataError("estimator: conditioning node " + std::to_string(cond[k]) +
                      " out of range");
    if (k > 0 && cond[k] == cond[k - 1])
      throw DataError("estimator: conditioning node " + std::to_string(cond[k]) + " repeated");
    if (cond[k] == u || cond[k] == other)
      throw DataError("estimator: conditioning set overlaps the queried pair");
  }
  return cond;
}

// One stratum's contribution to nu-bar-hat. Both code paths and the per-pair
// tabulation all funnel through here so their floating-point work agrees
// bit for bit.
inline double stratum_term(const std::uint64_t* cells, std::int64_t n, bool signed_variant) {
  const std::uint64_t m = cells[0] + cells[1] + cells[2] + cells[3];
  const std::uint64_t i_plus = cells[1] + cells[3];
  const std::uint64_t i_minus = cells[0] + cells[2];
  if (i_plus == 0 || i_minus == 0) return 0.0;
  const double md = static_cast<double>(m);
  const double lambda = 2.0 * (static_cast<double>(i_plus) / md) *
                        (static_cast<double>(i_minus) / md);
  const double nu = static_cast<double>(cells[3]) / static_cast<double>(i_plus) -
                    static_cast<double>(cells[2]) / static_cast<double>(i_minus);
  const double weight = md / static_cast<double>(n);
  return weight * lambda * (signed_variant ? nu : std::abs(nu));
}

}  // namespace

ConditionalCounts tabulate(const SampleSet& s, int u, int i, std::span<const int> S) {
  if (i == u) throw DataError("estimator: query pair must be two distinct nodes");
  ConditionalCounts out;
  out.cond = checked_cond(s.p(), u, S, i);
  if (i < 0 || i >= s.p()) throw DataError("estimator: node " + std::to_string(i) + " out of range");
  out.u = u;
  out.i = i;
  out.n = s.n();
  std::map<std::uint64_t, std::array<std::uint64_t, 4>> acc;
  for (std::int64_t r = 0; r < s.n(); ++r) {
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < out.cond.size(); ++k)
      key |= static_cast<std::uint64_t>(s.at(r, out.cond[k]) > 0) << k;
    const int a = s.at(r, u) > 0;
    const int b = s.at(r, i) > 0;
    acc[key][a * 2 + b] += 1;
  }
  for (const auto& [key, cells] : acc) out.strata.push_back({key, cells});
  return out;
}

ConditionalCounts tabulate(const SampleHistogram& h, int u, int i, std::span<const int> S) {
  if (i == u) throw DataError("estimator: query pair must be two distinct nodes");
  ConditionalCounts out;
  out.cond = checked_cond(h.p(), u, S, i);
  if (i < 0 || i >= h.p()) throw DataError("estimator: node " + std::to_string(i) + " out of range");
  out.u = u;
  out.i = i;
  out.n = h.n();
  std::map<std::uint64_t, std::array<std::uint64_t, 4>> acc;
  for (std::int64_t j = 0; j < h.patterns(); ++j) {
    const std::uint64_t key = h.gather_key(j, out.cond);
    const int a = h.spin_bit(j, u);
    const int b = h.spin_bit(j, i);
    acc[key][a * 2 + b] += h.weight(j);
  }
  for (const auto& [key, cells] : acc) out.strata.push_back({key, cells});
  return out;
}

double empirical_influence(const ConditionalCounts& c, bool signed_variant) {
  if (c.n == 0) return 0.0;
  double sum = 0.0;
  for (const StratumCounts& st : c.strata) sum += stratum_term(st.cells.data(), c.n, signed_variant);
  return sum;
}

std::vector<double> influence_scan(const SampleHistogram& h, int u, std::span<const int> S,
                                   bool signed_variant) {
  const int p = h.p();
  const std::vector<int> cond = checked_cond(p, u, S);
  std::vector<double> out(p, 0.0);
  if (h.n() == 0) return out;

  const std::int64_t m = h.patterns();
  std::vector<std::uint64_t> keys(m);
  for (std::int64_t j = 0; j < m; ++j) keys[j] = h.gather_key(j, cond);

  // Slot assignment in ascending key order keeps the per-i reduction order
  // identical to the per-pair tabulation.
  std::vector<std::uint32_t> slot(m);
  std::int64_t n_slots = 0;
  const bool dense =
      cond.size() <= 11 ||
      (cond.size() < 40 &&
       (std::uint64_t{1} << cond.size()) <= 2 * static_cast<std::uint64_t>(m));
  if (dense) {
    n_slots = std::int64_t{1} << cond.size();
    for (std::int64_t j = 0; j < m; ++j) slot[j] = static_cast<std::uint32_t>(keys[j]);
  } else {
    std::vector<std::uint64_t> uniq(keys);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    n_slots = static_cast<std::int64_t>(uniq.size());
    for (std::int64_t j = 0; j < m; ++j)
      slot[j] = static_cast<std::uint32_t>(
          std::lower_bound(uniq.begin(), uniq.end(), keys[j]) - uniq.begin());
  }

  std::vector<std::uint8_t> xu(m);
  for (std::int64_t j = 0; j < m; ++j) xu[j] = static_cast<std::uint8_t>(h.spin_bit(j, u));

  std::vector<bool> excluded(p, false);
  excluded[u] = true;
  for (int s : cond) excluded[s] = true;

  const std::int64_t n = h.n();
  parallel_for(p, [&](std::int64_t i) {
    if (excluded[i]) return;
    static thread_local std::vector<std::uint64_t> cells;
    cells.assign(static_cast<std::size_t>(n_slots) * 4, 0);
    for (std::int64_t j = 0; j < m; ++j) {
      const int b = h.spin_bit(j, static_cast<int>(i));
      cells[slot[j] * 4u + xu[j] * 2u + b] += h.weight(j);
    }
    double sum = 0.0;
    for (std::int64_t k = 0; k < n_slots; ++k)
      sum += stratum_term(cells.data() + k * 4, n, signed_variant);
    out[i] = sum;
  });
  return out;
}

std::vector<double> influence_scan_serial(const SampleSet& s, int u, std::span<const int> S,
                                          bool signed_variant) {
  const int p = s.p();
  const std::vector<int> cond = checked_cond(p, u, S);
  std::vector<double> out(p, 0.0);
  if (s.n() == 0) return out;

  // stratum key -> cells for every candidate i, laid out [i*4 + a*2 + b]
  std::map<std::uint64_t, std::vector<std::uint64_t>> acc;
  for (std::int64_t r = 0; r < s.n(); ++r) {
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < cond.size(); ++k)
      key |= static_cast<std::uint64_t>(s.at(r, cond[k]) > 0) << k;
    auto [it, fresh] = acc.try_emplace(key);
    if (fresh) it->second.assign(static_cast<std::size_t>(p) * 4, 0);
    const int a = s.at(r, u) > 0;
    for (int i = 0; i < p; ++i) it->second[i * 4 + a * 2 + (s.at(r, i) > 0)] += 1;
  }

  std::vector<bool> excluded(p, false);
  excluded[u] = true;
  for (int c : cond) excluded[c] = true;
  for (int i = 0; i < p; ++i) {
    if (excluded[i]) continue;
    double sum = 0.0;
    for (const auto& [key, cells] : acc) sum += stratum_term(cells.data() + i * 4, s.n(), signed_variant);
    out[i] = sum;
  }
  return out;
}

}  // namespace ising
