#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fock/waves.hpp"

namespace fock::waves {

namespace {

double uniform_step(const std::vector<double>& grid, const char* who) {
  if (grid.size() < 3) throw std::invalid_argument(std::string(who) + ": grid needs at least 3 points");
  const double h = grid[1] - grid[0];
  if (!(h > 0.0)) throw std::invalid_argument(std::string(who) + ": grid must be increasing");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-9 * h + 1e-12 * std::abs(grid[i]))
      throw std::invalid_argument(std::string(who) + ": grid must be uniform");
  }
  return h;
}

// max_i |op_i R| / max |R| for op_i R = a2 R'' + a1 R' + a0 R at interior nodes.
template <class Coeffs>
double radial_residual(const std::vector<cplx>& values, const std::vector<double>& grid, double h, Coeffs coeffs) {
  double worst = 0.0, scale = 0.0;
  for (const cplx& v : values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const cplx d2 = (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h);
    const cplx d1 = (values[i + 1] - values[i - 1]) / (2.0 * h);
    double a2, a1, a0;
    coeffs(grid[i], a2, a1, a0);
    worst = std::max(worst, std::abs(a2 * d2 + a1 * d1 + a0 * values[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double coulomb_like_residual(const SpectralParams& params, int l, const std::vector<double>& r_grid, double charge,
                             cplx (*wave)(const SpectralParams&, int, double)) {
  params.validate();
  const double h = uniform_step(r_grid, "eigen_residual_coulomb");
  if (!(r_grid.front() > 0.0)) throw std::domain_error("eigen_residual_coulomb: grid must stay away from r = 0");
  std::vector<cplx> values;
  values.reserve(r_grid.size());
  for (double r : r_grid) values.push_back(wave(params, l, r));
  const double kin = -0.5 * params.hbar * params.hbar;
  const double centrifugal = l * (l + params.d - 2.0);
  const double E = params.energy();
  // (H - E) with H = kin (d^2 + (d-1)/r d - l(l+d-2)/r^2) - charge / r
  return radial_residual(values, r_grid, h, [&](double r, double& a2, double& a1, double& a0) {
    a2 = kin;
    a1 = kin * (params.d - 1.0) / r;
    a0 = -kin * centrifugal / (r * r) - charge / r - E;
  });
}

}  // namespace

double eigen_residual_coulomb(const SpectralParams& params, int l, const std::vector<double>& r_grid) {
  return coulomb_like_residual(params, l, r_grid, 1.0, &coulomb_partial_wave);
}

double eigen_residual_repulsive(const SpectralParams& params, int l, const std::vector<double>& r_grid) {
  return coulomb_like_residual(params, l, r_grid, -1.0, &repulsive_partial_wave);
}

double eigen_residual_hyperbolic(double lambda, int d, int l, const std::vector<double>& rho_grid) {
  const double h = uniform_step(rho_grid, "eigen_residual_hyperbolic");
  if (!(rho_grid.front() > 0.0 && rho_grid.back() < 1.0))
    throw std::domain_error("eigen_residual_hyperbolic: grid must lie inside (0, 1)");
  std::vector<cplx> values;
  values.reserve(rho_grid.size());
  for (double rho : rho_grid) values.push_back(hyperbolic_partial_wave(lambda, d, l, rho));
  const double eig = lambda * lambda + 0.25 * (d - 1.0) * (d - 1.0);
  const double centrifugal = l * (l + d - 2.0);
  return radial_residual(values, rho_grid, h, [&](double rho, double& a2, double& a1, double& a0) {
    const double conf = 0.25 * (1.0 - rho * rho) * (1.0 - rho * rho);
    a2 = conf;
    a1 = conf * (d - 1.0) / rho + 0.5 * (d - 2.0) * rho * (1.0 - rho * rho);
    a0 = -conf * centrifugal / (rho * rho) + eig;
  });
}

double eigen_residual_hyperbolic_plane_wave(double lambda, const SphereDirection& theta0,
                                            const std::vector<Point>& points, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("eigen_residual_hyperbolic_plane_wave: h must be positive");
  const int d = theta0.dim();
  const double eig = lambda * lambda + 0.25 * (d - 1.0) * (d - 1.0);
  double worst = 0.0, scale = 0.0;
  for (const Point& u : points) {
    if (static_cast<int>(u.size()) != d) throw std::invalid_argument("eigen_residual_hyperbolic_plane_wave: dimension mismatch");
    if (!(norm(u) + h < 1.0)) throw std::domain_error("eigen_residual_hyperbolic_plane_wave: stencil leaves the ball");
    const cplx e0 = hyperbolic_plane_wave(lambda, u, theta0);
    cplx lap = 0.0, radial_drift = 0.0;
    for (int i = 0; i < d; ++i) {
      Point up = u, dn = u;
      up[i] += h;
      dn[i] -= h;
      const cplx ep = hyperbolic_plane_wave(lambda, up, theta0);
      const cplx em = hyperbolic_plane_wave(lambda, dn, theta0);
      lap += (ep - 2.0 * e0 + em) / (h * h);
      radial_drift += u[i] * (ep - em) / (2.0 * h);
    }
    // Conformal metric 4|du|^2/(1-|u|^2)^2:  Delta_g = ((1-|u|^2)^2/4) (Delta + (d-2) (2/(1-|u|^2)) u.grad)
    const double s = 1.0 - dot(u, u);
    const cplx lb = 0.25 * s * s * (lap + (d - 2.0) * (2.0 / s) * radial_drift);
    worst = std::max(worst, std::abs(lb + eig * e0));
    scale = std::max(scale, std::abs(e0));
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace fock::waves
