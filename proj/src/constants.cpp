#include "isinglearn/constants.hpp"

#include <cmath>
#include <string>

#include "isinglearn/errors.hpp"

namespace ising {

TheoryConstants compute_constants(double alpha, double beta, double h, int d) {
  if (!(alpha > 0.0) || !(beta >= alpha))
    throw DataError("constants: need 0 < alpha <= beta, got alpha=" + std::to_string(alpha) +
                    " beta=" + std::to_string(beta));
  if (!(h >= 0.0)) throw DataError("constants: need h >= 0, got " + std::to_string(h));
  if (d < 1) throw DataError("constants: need d >= 1, got " + std::to_string(d));

  TheoryConstants c;
  c.d = d;
  c.delta = 0.5 * std::exp(-2.0 * (beta * d + h));
  // Log domain: the delta power underflows long before the result matters.
  const double log_tau =
      2.0 * std::log(alpha) + (4.0 * d + 1.0) * std::log(c.delta) - std::log(16.0 * d * beta);
  c.tau_star = std::exp(log_tau);
  c.eps_star = 0.5 * c.tau_star;
  c.ell_star = std::exp(std::log(8.0) - 2.0 * log_tau);
  return c;
}

SampleBound required_samples_upper(double ell, double eps, double delta, std::int64_t p,
                                   double zeta) {
  if (!(ell >= 0.0)) throw DataError("sample bound: need ell >= 0");
  if (!(eps > 0.0)) throw DataError("sample bound: need eps > 0");
  if (!(delta > 0.0 && delta <= 0.5))
    throw DataError("sample bound: need 0 < delta <= 1/2, got " + std::to_string(delta));
  if (p < 2) throw DataError("sample bound: need p >= 2, got " + std::to_string(p));
  if (!(zeta > 0.0 && zeta < 1.0))
    throw DataError("sample bound: need 0 < zeta < 1, got " + std::to_string(zeta));

  const double log_n = std::log(144.0) + std::log(ell + 3.0) - 2.0 * std::log(eps) -
                       2.0 * ell * std::log(delta) +
                       std::log(std::log(static_cast<double>(p) / zeta));
  // Anything near 10^18 samples is out of reach; call it overflow well before
  // the integer conversion could misbehave.
  if (!(log_n < std::log(1.0e18))) {
    return {kSampleOverflow, true};
  }
  const double direct = 144.0 * (ell + 3.0) / (eps * eps * std::pow(delta, 2.0 * ell)) *
                        std::log(static_cast<double>(p) / zeta);
  return {static_cast<std::uint64_t>(std::ceil(direct)), false};
}

double sample_lower_bound(double alpha, double beta, int d, std::int64_t p) {
  if (!(alpha > 0.0) || !(beta >= alpha))
    throw DataError("lower bound: need 0 < alpha <= beta");
  if (d < 1) throw DataError("lower bound: need d >= 1");
  if (p * d <= 8)
    throw DataError("lower bound: need p*d > 8, got p=" + std::to_string(p) +
                    " d=" + std::to_string(d));
  const double num = std::exp(beta * d) * std::log(static_cast<double>(p) * d / 4.0 - 1.0);
  return num / (4.0 * alpha * d * std::exp(alpha));
}

}  // namespace ising
