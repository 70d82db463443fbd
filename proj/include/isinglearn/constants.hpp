#pragma once

#include <cstdint>
#include <limits>

namespace ising {

/// Quantities the recovery guarantee is phrased in, all derived from the
/// class bounds (alpha, beta, h) and the degree bound d:
///   delta    = min conditional spin probability, (1/2) exp(-2 (beta d + h))
///   tau_star = influence threshold, alpha^2 delta^(4d+1) / (16 d beta)
///   eps_star = tau_star / 2
///   ell_star = 2 / (tau_star - eps_star)^2, cap on the pseudo-neighborhood
/// tau_star underflows to zero and ell_star to +inf for quite modest d; that
/// is a property of the worst-case constants, not a bug here.
struct TheoryConstants {
  double delta = 0.0;
  double tau_star = 0.0;
  double eps_star = 0.0;
  double ell_star = 0.0;
  int d = 0;
};

/// Requires 0 < alpha <= beta, h >= 0, d >= 1.
TheoryConstants compute_constants(double alpha, double beta, double h, int d);

inline constexpr std::uint64_t kSampleOverflow = std::numeric_limits<std::uint64_t>::max();

struct SampleBound {
  std::uint64_t n = 0;  // kSampleOverflow when the bound exceeds the sentinel
  bool overflow = false;
};

/// Samples sufficient for the guarantee with conditioning sets of size ell:
///   n >= 144 (ell + 3) / (eps^2 delta^(2 ell)) * ln(p / zeta).
/// Requires ell >= 0, eps > 0, 0 < delta <= 1/2, p >= 2, 0 < zeta < 1.
SampleBound required_samples_upper(double ell, double eps, double delta, std::int64_t p,
                                   double zeta);

/// Information-theoretic necessity at maximal coupling:
///   n >= exp(beta d) * ln(p d / 4 - 1) / (4 alpha d exp(alpha)).
/// Requires p d > 8 so the logarithm has a positive argument.
double sample_lower_bound(double alpha, double beta, int d, std::int64_t p);

}  // namespace ising
