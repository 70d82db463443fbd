#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "isinglearn/samples.hpp"

namespace ising {

/// Conditioning keys are packed into a u64, one bit per conditioning node
/// (ascending node order), so sets larger than this cannot be tabulated.
inline constexpr int kMaxConditioning = 64;

struct StratumCounts {
  std::uint64_t key = 0;
  // cells[a*2+b] with a = (x_u == +1), b = (x_i == +1)
  std::array<std::uint64_t, 4> cells{};
  std::uint64_t total() const { return cells[0] + cells[1] + cells[2] + cells[3]; }
};

/// Joint (X_u, X_i) counts per observed conditioning stratum, strata in
/// ascending key order. Rebuilding from the same rows in any order gives the
/// identical object.
struct ConditionalCounts {
  int u = -1;
  int i = -1;
  std::vector<int> cond;  // ascending
  std::int64_t n = 0;
  std::vector<StratumCounts> strata;
};

ConditionalCounts tabulate(const SampleSet& s, int u, int i, std::span<const int> S);
ConditionalCounts tabulate(const SampleHistogram& h, int u, int i, std::span<const int> S);

/// Plug-in averaged conditional influence
///   sum over strata of P-hat(x_S) * lambda-hat * |nu-hat|,
/// where a stratum with X_i constant contributes zero. The signed variant
/// (no absolute value) is exposed for experiments only.
double empirical_influence(const ConditionalCounts& c, bool signed_variant = false);

/// nu-bar-hat for every candidate i at once; entries for i in S + {u} are 0.
/// Per-entry results are bit-identical to empirical_influence(tabulate(...)).
std::vector<double> influence_scan(const SampleHistogram& h, int u, std::span<const int> S,
                                   bool signed_variant = false);

/// Row-streaming reference for the histogram kernel; used by tests and the
/// kernel benchmark.
std::vector<double> influence_scan_serial(const SampleSet& s, int u, std::span<const int> S,
                                          bool signed_variant = false);

}  // namespace ising
