#include <cmath>
#include <stdexcept>

#include "fock/specfun.hpp"
#include "fock/waves.hpp"

namespace fock::waves {

namespace {

void check_dims(const Point& x, const SphereDirection& theta0, const char* who) {
  if (x.size() != theta0.theta.size()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// c e^{i k x.theta0} M(a; (d-1)/2; i k (|x| - x.theta0)) with a = +-lambda i.
cplx coulomb_like(const SpectralParams& params, const Point& x, const SphereDirection& theta0, double a_imag) {
  params.validate();
  const double k = params.wavenumber();
  const double along = dot(x, theta0.theta);
  // |x| - x.theta0 >= 0; computed as |x - (x.theta0) theta0|^2 / (|x| + x.theta0) when that is better conditioned.
  const double r = norm(x);
  double transverse = r - along;
  if (along > 0.0 && r > 0.0) {
    double perp2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double c = x[i] - along * theta0.theta[i];
      perp2 += c * c;
    }
    transverse = perp2 / (r + along);
  }
  const cplx m = specfun::olver_M(cplx(0.0, a_imag), 0.5 * (params.d - 1.0), cplx(0.0, k * transverse));
  return params.normalization() * std::exp(cplx(0.0, k * along)) * m;
}

}  // namespace

cplx coulomb_plane_wave(const SpectralParams& params, const Point& x, const SphereDirection& theta0) {
  check_dims(x, theta0, "coulomb_plane_wave");
  return coulomb_like(params, x, theta0, params.lambda);
}

cplx repulsive_plane_wave(const SpectralParams& params, const Point& x, const SphereDirection& theta0) {
  check_dims(x, theta0, "repulsive_plane_wave");
  return std::exp(-M_PI * std::abs(params.lambda)) * coulomb_like(params, x, theta0, -params.lambda);
}

cplx hyperbolic_plane_wave(double lambda, const Point& u, const SphereDirection& theta0) {
  check_dims(u, theta0, "hyperbolic_plane_wave");
  const double u2 = dot(u, u);
  if (!(u2 < 1.0)) throw std::domain_error("hyperbolic_plane_wave: |u| must be < 1");
  double dist2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dist2 += (u[i] - theta0.theta[i]) * (u[i] - theta0.theta[i]);
  const double d = static_cast<double>(u.size());
  const double log_base = std::log1p(-u2) - std::log(dist2);
  return std::exp(cplx(0.5 * (d - 1.0), -lambda) * log_base);
}

}  // namespace fock::waves
