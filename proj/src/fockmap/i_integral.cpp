#include <cmath>
#include <stdexcept>

#include "fock/fockmap.hpp"
#include "fock/specfun.hpp"

namespace fock::fockmap {

namespace {

void check_args(int l, int d, double xi_norm, const char* who) {
  if (l < 0) throw std::invalid_argument(std::string(who) + ": l must be >= 0");
  if (d < 2) throw std::invalid_argument(std::string(who) + ": d must be >= 2");
  if (!(xi_norm > 1.0)) throw std::domain_error(std::string(who) + ": need |xi| > 1");
}

}  // namespace

cplx appendix_I_integral(double lambda, int l, int d, double xi_norm) {
  check_args(l, d, xi_norm, "appendix_I_integral");
  const double c = 0.5 * (d - 1.0) + l;  // Re a
  const cplx a(c, -lambda);
  const double n2 = xi_norm * xi_norm;
  const double power = 0.5 * (d + 1.0) + l;
  // Each half t in (0, 1/2] and 1 - t in (0, 1/2] is mapped by t = e^{-u}: the endpoint
  // singularity t^{a-1} dt becomes e^{-a u} du, smooth and exponentially decaying.
  auto integrand = [&](double t, double one_minus_t) -> cplx {
    const double z = one_minus_t - t;  // 1 - 2t, computed without cancellation
    return std::exp((a - 1.0) * std::log(t) + (std::conj(a) - 1.0) * std::log(one_minus_t)) * z /
           std::pow(n2 - z * z, power);
  };
  const double u_max = 40.0 / c;
  const int panels = static_cast<int>(std::ceil((u_max - M_LN2) / 0.5));
  auto left = [&](double u) {
    const double t = std::exp(-u);
    return integrand(t, -std::expm1(-u)) * t;
  };
  auto right = [&](double u) {
    const double s = std::exp(-u);
    return integrand(-std::expm1(-u), s) * s;
  };
  return numerics::integrate_panels(left, M_LN2, u_max, panels, 16) +
         numerics::integrate_panels(right, M_LN2, u_max, panels, 16);
}

cplx appendix_I_integral_cosh(double lambda, int l, int d, double xi_norm) {
  check_args(l, d, xi_norm, "appendix_I_integral_cosh");
  const double nu = 0.5 * (d - 1.0) + l;
  const double n2 = xi_norm * xi_norm;
  const double X = (n2 + 1.0) / (n2 - 1.0);
  const double integral = specfun::conical_laplace_integral(lambda, nu, X);
  return cplx(0.0, lambda) * integral /
         (std::pow(2.0, nu - 1.0) * std::pow(n2 - 1.0, 0.5 * (d + 1.0) + l) * nu);
}

}  // namespace fock::fockmap
