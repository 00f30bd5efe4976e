// Inverse pipeline: extension of hyperbolic data across the unit sphere by the branch
// rule, finite-part inverse Hankel transform, and the Schwinger-type Poisson formula.
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "fock/fockmap.hpp"
#include "fock/specfun.hpp"

namespace fock::fockmap {

namespace {

// Coefficients (A, B) of G(1 + side x) x ~ A x^{i lam} + B x^{-i lam} + C x^{1+i lam} + D x^{1-i lam}.
std::pair<cplx, cplx> fit_sphere_singularity(const std::function<cplx(double)>& G, double lam, int side,
                                             double base) {
  Eigen::Matrix4cd A;
  Eigen::Vector4cd rhs;
  for (int j = 0; j < 4; ++j) {
    const double x = base * std::pow(2.0, j);
    const cplx p = std::exp(cplx(0.0, lam * std::log(x)));
    A(j, 0) = p;
    A(j, 1) = 1.0 / p;
    A(j, 2) = x * p;
    A(j, 3) = x / p;
    rhs(j) = G(1.0 + side * x) * x;
  }
  const Eigen::Vector4cd c = A.colPivHouseholderQr().solve(rhs);
  return {c(0), c(1)};
}

template <class F>
cplx panels_over(F&& f, double a, double b, double max_width, int nodes) {
  if (!(b > a)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
  return numerics::integrate_panels(f, a, b, panels, nodes);
}

}  // namespace

cplx inverse_dilated_fourier_radial(const SpectralParams& params, int l, const std::function<cplx(double)>& G,
                                    double r, const InverseOptions& options) {
  params.validate();
  if (l < 0) throw std::invalid_argument("inverse_dilated_fourier_radial: l must be >= 0");
  if (!(r > 0.0)) throw std::domain_error("inverse_dilated_fourier_radial: r must be positive");
  const double delta = options.singular_window;
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("inverse_dilated_fourier_radial: window must lie in (0, 1)");
  const int d = params.d;
  const double hbar = params.hbar;
  const double lam = std::abs(params.lambda);
  const double kappa = 1.0 / (hbar * hbar * lam);
  const double nu = 0.5 * d - 1.0 + l;
  const double freq = kappa * r;
  auto phi = [&](double s) { return std::pow(s, 0.5 * d) * specfun::bessel_j(nu, freq * s); };
  const double width = std::min(0.25, 2.0 / (freq + 1.0));
  const int n = options.nodes;

  // Regular pieces.
  cplx total = panels_over([&](double s) { return G(s) * phi(s); }, 0.0, 1.0 - delta, width, n);
  total += panels_over([&](double s) { return G(s) * phi(s); }, 1.0 + delta, options.s_max, width, n);

  // Finite part across |s - 1| < delta on each side, in u = -ln|s - 1|.
  const double phi1 = phi(1.0);
  const double u0 = -std::log(delta);
  for (int side : {+1, -1}) {
    const auto [A, B] = fit_sphere_singularity(G, lam, side, options.fit_base);
    auto subtracted = [&, A = A, B = B](double u) -> cplx {
      const double x = std::exp(-u);
      const cplx p = std::exp(cplx(0.0, -lam * u));  // x^{i lam}
      return G(1.0 + side * x) * x * phi(1.0 + side * x) - (A * p + B / p) * phi1;
    };
    total += panels_over(subtracted, u0, options.u_max, 0.5, n);
    // f.p. \int_0^delta x^{-1 +- i lam} dx = delta^{+- i lam} / (+- i lam)
    const cplx dp = std::exp(cplx(0.0, lam * std::log(delta)));
    total += phi1 * (A * dp / cplx(0.0, lam) + B / dp / cplx(0.0, -lam));
  }

  const cplx il = std::pow(cplx(0.0, params.lambda > 0.0 ? 1.0 : -1.0), l);  // signed dilation, see forward map
  const double scale = std::pow(hbar, d) * std::pow(lam, 0.5 * d) * std::pow(kappa, 0.5 * d + 1.0) *
                       std::pow(r, 1.0 - 0.5 * d);
  return il * scale * total;
}

cplx fock_map_inverse_partial_wave(const SpectralParams& params, int l, double r, const InverseOptions& options) {
  params.validate();
  const int d = params.d;
  const double lam = params.lambda;
  // Exterior: G(s) = h(1/s) / M(s). Interior (branch rule): G(s) = -e^{-pi|lambda|} s^{-(d+1)} G(1/s) = -e^{-pi|lambda|} h(s) / M(s).
  auto G = [&](double s) -> cplx {
    if (s > 1.0) return waves::hyperbolic_partial_wave(lam, d, l, 1.0 / s) / multiplier(d, s);
    if (s < 1.0) {
      if (s == 0.0) return (l == 0) ? -std::exp(-M_PI * std::abs(lam)) * waves::hyperbolic_partial_wave(lam, d, 0, 0.0) /
                                          multiplier(d, 0.0)
                                    : cplx(0.0);
      return -std::exp(-M_PI * std::abs(lam)) * waves::hyperbolic_partial_wave(lam, d, l, s) / multiplier(d, s);
    }
    throw std::domain_error("fock_map_inverse_partial_wave: |xi| = 1 is singular");
  };
  return inverse_dilated_fourier_radial(params, l, G, r, options);
}

cplx schwinger_zonal_eigenvalue(double lambda, int d, int l, double s) {
  if (!(s > 0.0) || s == 1.0) throw std::domain_error("schwinger_zonal_eigenvalue: need s > 0, s != 1");
  if (l < 0) throw std::invalid_argument("schwinger_zonal_eigenvalue: l must be >= 0");
  const double x = std::abs(s - 1.0);
  const cplx expo(-0.5 * (d - 1.0), lambda);  // base^{-(b - lambda i)}, base = |s e - theta|^2
  if (d == 2) {
    // 2 \int_0^pi (x^2 + 4 s sin^2(phi/2))^{expo} cos(l phi) dphi, graded towards phi = 0.
    auto f = [&](double phi) {
      const double sh = std::sin(0.5 * phi);
      return std::exp(expo * std::log(x * x + 4.0 * s * sh * sh)) * std::cos(l * phi);
    };
    cplx sum = 0.0;
    double a = 0.0;
    for (double b = std::min(0.25 * x, M_PI); a < M_PI; b = std::min(2.0 * b, M_PI)) {
      sum += panels_over(f, a, b, 0.5, 16);
      a = b;
    }
    return 2.0 * sum;
  }
  if (d == 3) {
    // 2 pi \int_0^2 (x^2 + 2 s v)^{expo} P_l(1 - v) dv, graded towards v = 0.
    auto f = [&](double v) { return std::exp(expo * std::log(x * x + 2.0 * s * v)) * std::legendre(l, 1.0 - v); };
    cplx sum = 0.0;
    double a = 0.0;
    for (double b = std::min(0.25 * x * x, 2.0); a < 2.0; b = std::min(2.0 * b, 2.0)) {
      sum += panels_over(f, a, b, 0.25, 16);
      a = b;
    }
    return 2.0 * M_PI * sum;
  }
  throw std::invalid_argument("schwinger_zonal_eigenvalue: only d = 2 and d = 3 are supported");
}

cplx schwinger_poisson(const SpectralParams& params, const BoundaryData& f, const Point& x,
                       const InverseOptions& options) {
  params.validate();
  f.validate();
  const int d = params.d;
  if (f.d != d || static_cast<int>(x.size()) != d) throw std::invalid_argument("schwinger_poisson: dimension mismatch");
  const double r = waves::norm(x);
  if (!(r > 0.0)) throw std::domain_error("schwinger_poisson: x must be nonzero");
  Point dir(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dir[i] = x[i] / r;
  const double lam = params.lambda;
  const double pref = std::pow(2.0, 0.5 * (d + 1.0));
  cplx value = 0.0;
  for (int l = 0; l <= f.l_max; ++l) {
    cplx angular = 0.0;
    for (int m = 0; m < static_cast<int>(f.coefficients[l].size()); ++m) {
      if (f.coefficients[l][m] != cplx(0.0)) angular += f.coefficients[l][m] * waves::real_harmonic(d, l, m, dir);
    }
    if (angular == cplx(0.0)) continue;
    auto G = [&](double s) -> cplx {
      if (s == 0.0) return l == 0 ? pref * sphere_symbol(0.0, lam) * schwinger_zonal_eigenvalue(lam, d, 0, 1e-300) : 0.0;
      return pref * sphere_symbol(s * s, lam) * schwinger_zonal_eigenvalue(lam, d, l, s);
    };
    value += angular * inverse_dilated_fourier_radial(params, l, G, r, options);
  }
  return value;
}

}  // namespace fock::fockmap
