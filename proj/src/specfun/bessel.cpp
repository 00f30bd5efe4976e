// Bessel J_nu(x) for real order nu >= 0 and real x >= 0.
//
//   * ascending series (extended precision) when x <= 12 or x <= nu, where the
//     alternating terms cancel by at most a few digits;
//   * Hankel's large-argument expansion, optimally truncated, when x >= 25
//     and the first omitted term is negligible;
//   * the standard library's cylindrical Bessel function in the transition band
//     x ~ 2 nu, where neither of the above reaches 1e-10 for larger orders.
#include <cmath>

#include "fock/specfun.hpp"

namespace fock::specfun {

namespace {

double series_j(double nu, double x) {
  using ldouble = long double;
  const ldouble hx = 0.5L * x;
  const ldouble q = -hx * hx;
  // leading term (x/2)^nu / Gamma(nu+1)
  ldouble term = std::exp(static_cast<ldouble>(nu) * std::log(hx) - std::lgamma(static_cast<ldouble>(nu) + 1.0L));
  ldouble sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<ldouble>(k) * (static_cast<ldouble>(k) + nu));
    sum += term;
    if (std::abs(term) <= 1e-22L * std::abs(sum) && k > hx) break;
  }
  return static_cast<double>(sum);
}

// Hankel expansion; returns false when the optimally truncated remainder is too large.
bool hankel_j(double nu, double x, double& out) {
  const double mu = 4.0 * nu * nu;
  double P = 0.0, Q = 0.0;
  double term = 1.0;  // a_k(nu) / x^k
  double omitted = INFINITY;
  double prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (std::abs(term) > prev) {  // past the smallest term
      omitted = std::abs(term);
      break;
    }
    if (k % 4 == 0) P += term;
    if (k % 4 == 1) Q += term;
    if (k % 4 == 2) P -= term;
    if (k % 4 == 3) Q -= term;
    prev = std::abs(term);
    const double odd = 2.0 * k + 1.0;
    term *= (mu - odd * odd) / ((k + 1.0) * 8.0 * x);
    if (std::abs(term) < 1e-17) {
      omitted = std::abs(term);
      break;
    }
  }
  if (omitted > 1e-14) return false;
  const double phase = 0.5 * nu * M_PI + 0.25 * M_PI;
  const double c = std::cos(x) * std::cos(phase) + std::sin(x) * std::sin(phase);
  const double s = std::sin(x) * std::cos(phase) - std::cos(x) * std::sin(phase);
  out = std::sqrt(2.0 / (M_PI * x)) * (P * c - Q * s);
  return true;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0)) throw std::domain_error("bessel_j: order must be >= 0");
  if (!(x >= 0.0)) throw std::domain_error("bessel_j: argument must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 12.0 || x <= nu) return series_j(nu, x);
  if (x >= 25.0) {
    double v = 0.0;
    if (hankel_j(nu, x, v)) return v;
  }
  return std::cyl_bessel_j(nu, x);
}

}  // namespace fock::specfun
