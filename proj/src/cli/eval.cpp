#include <cmath>

#include "fock/cli.hpp"
#include "fock/fockmap.hpp"
#include "fock/scattering.hpp"
#include "fock/waves.hpp"

namespace fock::cli {

cplx evaluate(const EvalRequest& r) {
  if (static_cast<int>(r.point.size()) != r.d) throw ConfigError("eval: point must have d components");
  if (static_cast<int>(r.theta.size()) != r.d) throw ConfigError("eval: theta must have d components");
  const waves::SphereDirection theta0(r.theta);
  if (r.expr == "psi") return waves::coulomb_plane_wave(waves::SpectralParams(r.d, r.hbar, r.lambda), r.point, theta0);
  if (r.expr == "psi_minus")
    return waves::repulsive_plane_wave(waves::SpectralParams(r.d, r.hbar, r.lambda), r.point, theta0);
  if (r.expr == "e_lambda") return waves::hyperbolic_plane_wave(r.lambda, r.point, theta0);
  if (r.expr == "s_kernel") return scattering::s_kernel(r.lambda, r.d, waves::SphereDirection(r.point), theta0);
  if (r.expr == "fourier_closed")
    return fockmap::fourier_closed_form(waves::SpectralParams(r.d, r.hbar, r.lambda), r.point, theta0);
  throw ConfigError("eval: unknown expression '" + r.expr + "'");
}

}  // namespace fock::cli
