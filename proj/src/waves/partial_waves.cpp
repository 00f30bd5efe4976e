#include <cmath>
#include <stdexcept>

#include "fock/specfun.hpp"
#include "fock/waves.hpp"

namespace fock::waves {

namespace {

// Radial factor of \int c e^{i k x.theta} M(a; b; i k (|x| - x.theta)) Y_l(theta) dtheta with
// b = (d-1)/2:
//   c 2^{d-1} pi^{b} Gamma(b+l-a)/Gamma(b-a) (2 i k r)^l e^{i k r} M(b+l-a; 2b+2l; -2 i k r).
cplx coulomb_like_partial_wave(const SpectralParams& params, int l, double r, cplx a) {
  params.validate();
  if (l < 0) throw std::invalid_argument("partial wave: l must be >= 0");
  if (!(r >= 0.0)) throw std::domain_error("partial wave: r must be >= 0");
  const double b = 0.5 * (params.d - 1.0);
  const double k = params.wavenumber();
  const cplx gamma_ratio = std::exp(specfun::log_gamma(b + l - a) - specfun::log_gamma(b - a));
  const double pref = params.normalization() * std::pow(2.0, params.d - 1.0) * std::pow(M_PI, b);
  const cplx power = (l == 0) ? cplx(1.0) : std::pow(cplx(0.0, 2.0 * k * r), l);
  const cplx m = specfun::olver_M(b + l - a, 2.0 * b + 2.0 * l, cplx(0.0, -2.0 * k * r));
  return pref * gamma_ratio * power * std::exp(cplx(0.0, k * r)) * m;
}

}  // namespace

cplx coulomb_partial_wave(const SpectralParams& params, int l, double r) {
  return coulomb_like_partial_wave(params, l, r, cplx(0.0, params.lambda));
}

cplx repulsive_partial_wave(const SpectralParams& params, int l, double r) {
  return std::exp(-M_PI * std::abs(params.lambda)) * coulomb_like_partial_wave(params, l, r, cplx(0.0, -params.lambda));
}

cplx hyperbolic_partial_wave(double lambda, int d, int l, double rho) {
  if (d < 2) throw std::invalid_argument("hyperbolic_partial_wave: d must be >= 2");
  if (l < 0) throw std::invalid_argument("hyperbolic_partial_wave: l must be >= 0");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("hyperbolic_partial_wave: rho must lie in [0, 1)");
  const double b = 0.5 * (d - 1.0);
  const cplx gamma_ratio = std::exp(specfun::log_gamma(cplx(b + l, -lambda)) - specfun::log_gamma(cplx(b, -lambda)));
  const double x = (1.0 + rho * rho) / (1.0 - rho * rho);
  const double mu = 0.5 * d - 1.0 + l;
  // (2 rho/(1-rho^2))^{1-d/2} (x^2-1)^{mu/2} = (2 rho/(1-rho^2))^l
  const double radial = (l == 0) ? 1.0 : std::pow(2.0 * rho / (1.0 - rho * rho), l);
  return std::pow(2.0 * M_PI, 0.5 * d) * gamma_ratio * radial * specfun::conical_legendre_reduced(lambda, mu, x);
}

}  // namespace fock::waves
