// Conical (Mehler) functions, Gegenbauer polynomials and the Harish-Chandra c-function.
#include <algorithm>
#include <cmath>
#include <vector>

#include "fock/numerics.hpp"
#include "fock/specfun.hpp"

namespace fock::specfun {

namespace {

// J = \int_0^\infty cos(lambda t) (x + cosh t)^{-nu} dt.
//
// The integrand is even and analytic except at t = +-acosh(x) + i pi (mod 2 pi i), so the
// line of integration may be lifted to Im t = c < pi:
//     J = e^{-lambda c} Re \int_0^\infty e^{i lambda s} (x + cosh(s + i c))^{-nu} ds.
// For large lambda the unshifted integral is a cancellation of O(1) terms down to
// O(e^{-pi lambda}); the lift to c = pi - nu/lambda removes that cancellation.
double conical_integral_impl(double lambda, double nu, double x) {
  lambda = std::abs(lambda);
  const double c = (lambda > 0.0) ? std::max(0.0, M_PI - nu / lambda) : 0.0;
  const double t_max = std::max(40.0, (40.0 + std::log(x)) / nu);
  const double s_star = std::acosh(x);
  const double delta = M_PI - c;  // distance from the lifted line to the nearest singularity
  const double h_max = (lambda > 0.0) ? std::min(1.0, 2.0 / lambda) : 1.0;

  std::vector<double> cuts{0.0, t_max};
  if (s_star < t_max) {
    cuts.push_back(s_star);
    for (double g = 0.25 * delta; g < t_max; g *= 2.0) {
      if (s_star - g > 0.0) cuts.push_back(s_star - g);
      if (s_star + g < t_max) cuts.push_back(s_star + g);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double s) {
    const cplx base = x + std::cosh(cplx(s, c));
    return std::exp(cplx(0.0, lambda * s) - nu * std::log(base));
  };

  cplx sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / h_max)));
    sum += numerics::integrate_panels(integrand, a, b, pieces, 20);
  }
  return std::exp(-lambda * c) * sum.real();
}

}  // namespace

double conical_laplace_integral(double lambda, double nu, double x) {
  if (!(x >= 1.0)) throw std::domain_error("conical_laplace_integral: x must be >= 1");
  if (!(nu > 0.0)) throw std::domain_error("conical_laplace_integral: nu must be positive");
  return conical_integral_impl(lambda, nu, x);
}

double conical_legendre_reduced(double lambda, double mu, double x) {
  if (!(x >= 1.0)) throw std::domain_error("conical_legendre_reduced: x must be >= 1");
  if (!(mu >= 0.0)) throw std::domain_error("conical_legendre_reduced: mu must be >= 0");
  const double nu = mu + 0.5;
  const double log_pref = 0.5 * std::log(2.0) + std::lgamma(nu) - 0.5 * std::log(M_PI) -
                          2.0 * log_gamma(cplx(nu, lambda)).real();
  return std::exp(log_pref) * conical_integral_impl(lambda, nu, x);
}

double conical_legendre_P(double lambda, double mu, double x) {
  if (!(x > 1.0)) throw std::domain_error("conical_legendre_P: x must exceed 1");
  const double red = conical_legendre_reduced(lambda, mu, x);
  return std::pow(x * x - 1.0, 0.5 * mu) * red;
}

double gegenbauer_C(int l, double alpha, double t) {
  if (l < 0) throw std::domain_error("gegenbauer_C: degree must be >= 0");
  if (l == 0) return 1.0;
  if (alpha == 0.0) return 2.0 / l * std::cos(l * std::acos(std::clamp(t, -1.0, 1.0)));
  if (!(alpha > -0.5)) throw std::domain_error("gegenbauer_C: alpha must exceed -1/2 (or equal 0)");
  // n C_n = 2 t (n + alpha - 1) C_{n-1} - (n + 2 alpha - 2) C_{n-2}
  double prev = 1.0, cur = 2.0 * alpha * t;
  for (int n = 2; n <= l; ++n) {
    const double next = (2.0 * t * (n + alpha - 1.0) * cur - (n + 2.0 * alpha - 2.0) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx harish_chandra_c(double lambda, int d) {
  if (lambda == 0.0) throw std::domain_error("harish_chandra_c: pole at lambda = 0");
  if (d < 2) throw std::domain_error("harish_chandra_c: dimension must be >= 2");
  const cplx log_c = (d - 2.0) * std::log(2.0) + std::lgamma(0.5 * d) + log_gamma(cplx(0.0, lambda)) -
                     0.5 * std::log(M_PI) - log_gamma(cplx(0.5 * (d - 1.0), lambda));
  return std::exp(log_c);
}

double plancherel_density(double lambda, int d) {
  if (d < 2) throw std::domain_error("plancherel_density: dimension must be >= 2");
  if (lambda == 0.0) return 0.0;
  const double log_abs = (d - 2.0) * std::log(2.0) + std::lgamma(0.5 * d) + log_gamma(cplx(0.0, lambda)).real() -
                         0.5 * std::log(M_PI) - log_gamma(cplx(0.5 * (d - 1.0), lambda)).real();
  return std::exp(-2.0 * log_abs);
}

}  // namespace fock::specfun
