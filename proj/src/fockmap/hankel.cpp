// Forward pipeline: damped Hankel transforms of the Coulomb partial waves followed by the
// multiplier and inversion factors.
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fock/fockmap.hpp"
#include "fock/specfun.hpp"

namespace fock::fockmap {

numerics::QuadratureSpec HankelOptions::default_spec() {
  numerics::QuadratureSpec spec;
  spec.node_count = 16;
  spec.panel_width = 2.0;  // at most ~1.6 periods of e^{i(|xi|+1)s} per panel for |xi| <= 4
  // Relative to the gap ||xi| - 1|: integrands oscillate like e^{i (|xi| +- 1) s} s^{+-i lambda}.
  spec.damping_ladder = {0.16, 0.08, 0.04, 0.02, 0.01, 0.005};
  spec.extrapolation_order = 5;
  spec.tolerance = 1e-6;  // relative
  spec.tail_tolerance = 1e-12;
  return spec;
}

numerics::Extrapolated dilated_fourier_radial(const SpectralParams& params, int l,
                                              const std::function<cplx(double)>& radial, double xi_norm,
                                              const HankelOptions& options) {
  params.validate();
  if (l < 0) throw std::invalid_argument("dilated_fourier_radial: l must be >= 0");
  if (!(xi_norm > 0.0)) throw std::domain_error("dilated_fourier_radial: |xi| must be positive");
  const int d = params.d;
  const double hbar = params.hbar;
  const double lam = std::abs(params.lambda);
  const double kappa = 1.0 / (hbar * hbar * lam);
  const double eta = xi_norm * kappa;
  const double nu = 0.5 * d - 1.0 + l;

  // r = s / kappa:  \int R(r) r^{d/2} J_nu(eta r) dr = kappa^{-d/2-1} \int R(s/kappa) s^{d/2} J_nu(xi_norm s) ds
  auto integrand = [&](double s) -> cplx {
    return radial(s / kappa) * std::pow(s, 0.5 * d) * specfun::bessel_j(nu, xi_norm * s);
  };
  numerics::QuadratureSpec spec = options.spec;
  if (options.scale_ladder_with_gap) {
    const double gap = std::abs(xi_norm - 1.0);
    if (!(gap > 0.0)) throw std::domain_error("dilated_fourier_radial: |xi| = 1 is singular");
    for (double& e : spec.damping_ladder) e *= gap;
  }
  const auto samples = numerics::damped_ladder_values(integrand, spec);
  numerics::Extrapolated ex = numerics::richardson_extrapolate(samples, spec.extrapolation_order, spec.even_in_epsilon);
  if (ex.error_estimate > 10.0 * options.spec.tolerance * std::abs(ex.value)) {
    std::ostringstream msg;
    msg << "dilated_fourier_radial: relative extrapolation spread " << ex.error_estimate / std::abs(ex.value)
        << " exceeds tolerance";
    throw numerics::ConvergenceError(msg.str());
  }
  // The dilation carries sgn(lambda): xi -> xi / (hbar lambda), which reflects xi for lambda < 0.
  const cplx phase = std::pow(cplx(0.0, params.lambda > 0.0 ? -1.0 : 1.0), l);
  const double scale = std::pow(hbar * lam, -0.5 * d) * std::pow(hbar, -0.5 * d) * std::pow(eta, 1.0 - 0.5 * d) *
                       std::pow(kappa, -0.5 * d - 1.0);
  ex.value *= phase * scale;
  ex.error_estimate *= scale;
  return ex;
}

cplx fock_map_partial_wave(const SpectralParams& params, int l, double rho, const HankelOptions& options) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("fock_map_partial_wave: rho must lie in (0, 1)");
  const double xi_norm = 1.0 / rho;  // inversion: u = rho e  <->  xi = e / rho
  auto radial = [&](double r) { return waves::coulomb_partial_wave(params, l, r); };
  const cplx g = dilated_fourier_radial(params, l, radial, xi_norm, options).value;
  return multiplier(params.d, xi_norm) * g;
}

cplx repulsive_map_partial_wave(const SpectralParams& params, int l, double rho, const HankelOptions& options) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("repulsive_map_partial_wave: rho must lie in (0, 1)");
  auto radial = [&](double r) { return waves::repulsive_partial_wave(params, l, r); };
  const cplx g = dilated_fourier_radial(params, l, radial, rho, options).value;
  return multiplier(params.d, rho) * g;
}

cplx fock_map_apply(const SpectralParams& params, const BoundaryData& f, const Point& u, const HankelOptions& options) {
  params.validate();
  f.validate();
  if (f.d != params.d || static_cast<int>(u.size()) != params.d)
    throw std::invalid_argument("fock_map_apply: dimension mismatch");
  const double rho = waves::norm(u);
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("fock_map_apply: need 0 < |u| < 1");
  Point dir(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) dir[i] = u[i] / rho;
  cplx value = 0.0;
  for (int l = 0; l <= f.l_max; ++l) {
    cplx angular = 0.0;
    for (int m = 0; m < static_cast<int>(f.coefficients[l].size()); ++m) {
      if (f.coefficients[l][m] != cplx(0.0)) angular += f.coefficients[l][m] * waves::real_harmonic(params.d, l, m, dir);
    }
    if (angular != cplx(0.0)) value += angular * fock_map_partial_wave(params, l, rho, options);
  }
  return value;
}

}  // namespace fock::fockmap
