// Generalized eigenfunctions: Coulomb perturbed plane waves (attractive and repulsive),
// hyperbolic plane waves, their partial-wave radial factors, Poisson synthesis from
// spherical-harmonic boundary data, and finite-difference eigen-equation residuals.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fock::waves {

using cplx = std::complex<double>;
using Point = std::vector<double>;

/// Dimension, semiclassical parameter and spectral parameter of a Coulomb problem.
struct SpectralParams {
  int d = 2;
  double hbar = 1.0;
  double lambda = 1.0;

  SpectralParams() = default;
  SpectralParams(int d_, double hbar_, double lambda_);

  /// E = 1 / (2 hbar^2 lambda^2).
  double energy() const;
  /// Plane-wave normalization sqrt(2 pi) |lambda|^{-d/2-1} hbar^{-d}. It makes the
  /// semiclassical Fourier transform of the plane wave exactly the closed form used by
  /// the Fock map for every (hbar, lambda); at hbar = |lambda| = 1 it equals sqrt(2 pi).
  double normalization() const;
  /// Wavenumber 1 / (hbar^2 lambda) (signed).
  double wavenumber() const;
  /// Throws std::invalid_argument unless d >= 2, hbar > 0, lambda != 0.
  void validate() const;
};

/// Unit vector in R^d.
struct SphereDirection {
  Point theta;
  SphereDirection() = default;
  /// Throws std::invalid_argument when |theta| differs from 1 by more than 1e-12.
  explicit SphereDirection(Point t);
  int dim() const { return static_cast<int>(theta.size()); }
};

// ---------------------------------------------------------------------------
// Harmonic bases
// ---------------------------------------------------------------------------

/// Number of real harmonics of degree l (d = 2: 1 or 2; d = 3: 2l+1).
int harmonic_dimension(int d, int l);

/// Real orthonormal harmonic of degree l and index m (0 <= m < harmonic_dimension)
/// evaluated at the unit vector `unit`.
///   d = 2: {1/sqrt(2 pi)} for l = 0; {cos(l phi)/sqrt(pi), sin(l phi)/sqrt(pi)} for l >= 1.
///   d = 3: real spherical harmonics; index m maps to order m - l in {-l..l}, with
///          negative orders carrying sin(|order| phi) and positive orders cos(order phi).
double real_harmonic(int d, int l, int m, const Point& unit);

/// Spherical-harmonic coefficients of a function on S^{d-1}, d in {2, 3}.
struct BoundaryData {
  int d = 2;
  int l_max = 0;
  std::vector<std::vector<cplx>> coefficients;  // coefficients[l][m]

  /// All-zero data of the right shape.
  static BoundaryData zeros(int d, int l_max);
  /// Single basis mode (l, m) with unit coefficient.
  static BoundaryData mode(int d, int l_max, int l, int m);
  /// Independent standard complex Gaussian coefficients (deterministic in `seed`).
  static BoundaryData random(int d, int l_max, std::uint64_t seed);

  void validate() const;
  /// L^2(S^{d-1}) norm (orthonormal basis: the coefficient 2-norm).
  double norm() const;
  /// f(theta) = sum f_{lm} Y_{lm}(theta).
  cplx evaluate(const Point& unit) const;
};

// ---------------------------------------------------------------------------
// Plane waves and partial waves
// ---------------------------------------------------------------------------

/// psi(x; theta0) = c e^{i k x.theta0} M(lambda i; (d-1)/2; i k (|x| - x.theta0)), k = 1/(hbar^2 lambda).
cplx coulomb_plane_wave(const SpectralParams& params, const Point& x, const SphereDirection& theta0);
/// psi^-(x; theta0) = c e^{-pi |lambda|} e^{i k x.theta0} M(-lambda i; (d-1)/2; i k (|x| - x.theta0)).
cplx repulsive_plane_wave(const SpectralParams& params, const Point& x, const SphereDirection& theta0);
/// e_lambda(u; theta0) = ((1 - |u|^2) / |u - theta0|^2)^{(d-1)/2 - lambda i}, |u| < 1.
cplx hyperbolic_plane_wave(double lambda, const Point& u, const SphereDirection& theta0);

/// Radial factor R_l(r) with  \int psi(x; theta) Y_l(theta) dtheta = R_l(|x|) Y_l(x/|x|).
cplx coulomb_partial_wave(const SpectralParams& params, int l, double r);
/// Same for the repulsive plane wave.
cplx repulsive_partial_wave(const SpectralParams& params, int l, double r);
/// Radial factor of the hyperbolic Poisson operator at ball radius rho in [0, 1),
/// (2 pi)^{d/2} Gamma((d-1)/2 - lambda i + l)/Gamma((d-1)/2 - lambda i)
///   (2 rho/(1-rho^2))^{1-d/2} P^{-(d/2-1+l)}_{-1/2+lambda i}((1+rho^2)/(1-rho^2)),
/// evaluated through the reduced conical function so that rho = 0 is a regular point.
cplx hyperbolic_partial_wave(double lambda, int d, int l, double rho);

// ---------------------------------------------------------------------------
// Poisson synthesis
// ---------------------------------------------------------------------------

enum class WaveKind { coulomb, hyperbolic, repulsive };
std::string to_string(WaveKind kind);
WaveKind wave_kind_from_string(const std::string& name);

struct WaveField {
  std::vector<Point> grid;
  std::vector<cplx> values;
  WaveKind kind = WaveKind::coulomb;
  SpectralParams params;
};

/// F(x) = sum_{l,m} f_{lm} R_l(|x|) Y_{lm}(x/|x|). For the hyperbolic kind only
/// params.lambda and params.d are used and every point must satisfy |x| < 1.
WaveField poisson_synthesize(WaveKind kind, const SpectralParams& params, const BoundaryData& f,
                             const std::vector<Point>& points);

struct SphereQuadrature {
  int circle_points = 256;   // d = 2 trapezoid
  int polar_points = 64;     // d = 3 Gauss–Legendre in cos(polar angle)
  int azimuth_points = 128;  // d = 3 trapezoid in azimuth
};

/// Direct quadrature \int K(x; theta) f(theta) dtheta of the plane-wave kernel.
cplx kernel_quadrature(WaveKind kind, const SpectralParams& params, const BoundaryData& f, const Point& x,
                       const SphereQuadrature& quad = {});

/// \int g(theta) dtheta over S^{d-1} with the rule above (d in {2, 3}).
cplx sphere_integrate(int d, const std::function<cplx(const Point&)>& g, const SphereQuadrature& quad = {});

// ---------------------------------------------------------------------------
// Eigen-equation residuals
// ---------------------------------------------------------------------------

/// max |(H_l - E) R_l| / max |R_l| over the interior of a uniform grid, where
/// H_l = -hbar^2/2 (d^2 + (d-1)/r d - l(l+d-2)/r^2) - 1/r, by second-order central differences.
double eigen_residual_coulomb(const SpectralParams& params, int l, const std::vector<double>& r_grid);
/// Same with the repulsive potential +1/r and the repulsive partial wave.
double eigen_residual_repulsive(const SpectralParams& params, int l, const std::vector<double>& r_grid);
/// Ball-model radial Laplace–Beltrami residual with eigenvalue lambda^2 + (d-1)^2/4:
/// ((1-rho^2)^2/4)(d^2 + (d-1)/rho d - l(l+d-2)/rho^2) + ((d-2) rho (1-rho^2)/2) d.
double eigen_residual_hyperbolic(double lambda, int d, int l, const std::vector<double>& rho_grid);
/// Full d-dimensional finite-difference Laplace–Beltrami residual of e_lambda(.; theta0)
/// at the given interior points with step h (relative to max |e_lambda| at those points).
double eigen_residual_hyperbolic_plane_wave(double lambda, const SphereDirection& theta0,
                                            const std::vector<Point>& points, double h);

/// CSV export: a comment line with kind, d, hbar, lambda, then columns x1..xd, re, im.
void write_wavefield_csv(const WaveField& field, std::ostream& out);

// ---------------------------------------------------------------------------

double norm(const Point& x);
double dot(const Point& a, const Point& b);

}  // namespace fock::waves
