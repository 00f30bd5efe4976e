// The unitary map V = I o M o R o D o F carrying Coulomb generalized eigenfunctions to
// hyperbolic ones, its repulsive variant, the closed-form Fourier transforms of the
// perturbed plane waves, and the inverse map through the extension across the sphere.
//
// Factor maps (acting on the Fourier side):
//   F_hbar  semiclassical Fourier transform  (2 pi hbar)^{-d/2} \int e^{-i x.xi/hbar} f(x) dx
//   D       L^2-normalized dilation          (D g)(xi) = (hbar |lambda|)^{-d/2} g(xi / (hbar lambda))
//           (for lambda < 0 this includes the reflection xi -> -xi, which makes the closed form
//           below conjugate under lambda -> -lambda)
//   R       restriction to |xi| > 1 (attractive) or |xi| < 1 (repulsive)
//   M       multiplier                       |(|xi|^2 - 1)/2|^{(d+1)/2}
//   I       inversion                        (I g)(u) = g(u / |u|^2)
#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fock/numerics.hpp"
#include "fock/waves.hpp"

namespace fock::fockmap {

using cplx = std::complex<double>;
using waves::BoundaryData;
using waves::Point;
using waves::SpectralParams;
using waves::SphereDirection;

enum class BranchTag { exterior, interior };

struct FourierSideValue {
  Point xi;
  cplx value;
  BranchTag branch_tag = BranchTag::exterior;
};

/// (|xi|^2 - 1 - sgn(lambda) 0 i)^{-(1 + lambda i)}: arg = 0 outside the unit sphere and
/// -sgn(lambda) pi inside. Throws std::domain_error on the sphere.
cplx sphere_symbol(double xi_norm2, double lambda);

/// Value of the interior branch factor  (q - sgn(lambda) 0 i)^{1 + lambda i} / |q|^{1 + lambda i}
/// for q < 0; equals -e^{pi |lambda|} by the branch rule.
cplx interior_branch_factor(double lambda);

/// (D o F_hbar)[psi](xi) = 2^{(d+1)/2} / ((|xi|^2 - 1 - sgn(lambda) 0 i)^{1+lambda i} |xi - theta0|^{d-1-2 lambda i}).
cplx fourier_closed_form(const SpectralParams& params, const Point& xi, const SphereDirection& theta0);
FourierSideValue fourier_closed_form_tagged(const SpectralParams& params, const Point& xi,
                                            const SphereDirection& theta0);

/// The epsilon-regularized family whose limit eps -> 0+ is the closed form:
///   2^{(d+1)/2} (eps + lambda i)/|lambda| [eps^2 (1 + (b - eps - lambda i) Q / ((eps + lambda i) P)) - sgn(lambda) i]
///     / (Q^{1 + eps + lambda i} P^{b - eps - lambda i}),
/// Q = |xi|^2 - 1 + eps^4 - 2 sgn(lambda) eps^2 i,  P = |xi - theta0|^2 + eps^4,  b = (d-1)/2.
cplx fourier_regularized(const SpectralParams& params, const Point& xi, const SphereDirection& theta0, double eps);

/// Richardson limit of the regularized family along `ladder` (polynomial in eps).
numerics::Extrapolated fourier_regularized_limit(const SpectralParams& params, const Point& xi,
                                                 const SphereDirection& theta0,
                                                 const std::vector<double>& ladder = {0.02, 0.01, 0.005, 0.0025, 0.00125},
                                                 int order = 4);

/// Multiplier M at |xi|.
double multiplier(int d, double xi_norm);

// ---------------------------------------------------------------------------
// Direct two-dimensional transform
// ---------------------------------------------------------------------------

/// Settings of the direct damped Fourier transform of the plane wave in d = 2. Lengths are
/// in the dimensionless variable y = x / (hbar^2 |lambda|).
struct DirectFourierOptions {
  std::vector<double> ladder{0.4, 0.3, 0.2, 0.15, 0.1, 0.075, 0.05, 0.035, 0.025};  // damping e^{-eps |y|}
  int order = 5;                 // Richardson order (uses the order+1 smallest eps)
  double tail_tolerance = 1e-12; // radial cut-off where e^{-eps_min |y|} drops below this
  double table_step = 0.02;      // grid step of the tabulated M factor
  double panel_width = 0.5;      // radial Gauss–Legendre panel width
  int radial_nodes = 10;
  double angular_density = 1.3;  // trapezoid points per unit of r (2 + |xi|), plus 40
};

/// Damped transforms (D o F_hbar)[e^{-eps |y|} psi](xi) for every ladder entry (d = 2 only),
/// from one pass of a polar product rule. The M factor of the plane wave is tabulated once
/// and interpolated by local cubics.
std::vector<std::pair<double, cplx>> direct_fourier_ladder_2d(const SpectralParams& params, const Point& xi,
                                                              const SphereDirection& theta0,
                                                              const DirectFourierOptions& options = {});

/// Richardson limit eps -> 0 of direct_fourier_ladder_2d; compares with fourier_closed_form.
numerics::Extrapolated direct_fourier_transform_2d(const SpectralParams& params, const Point& xi,
                                                   const SphereDirection& theta0,
                                                   const DirectFourierOptions& options = {});

// ---------------------------------------------------------------------------
// Hankel pipeline
// ---------------------------------------------------------------------------

/// Settings of the damped Hankel integrals. Damping parameters are in units of the
/// dimensionless radius s = |x| / (hbar^2 |lambda|). The damped integral is analytic in
/// eps within a disc of radius ||xi| - 1| (the beat frequency of the integrand), so by
/// default the ladder is multiplied by that gap.
struct HankelOptions {
  numerics::QuadratureSpec spec = default_spec();
  bool scale_ladder_with_gap = true;
  static numerics::QuadratureSpec default_spec();
};

/// (D o F_hbar)[R Y_l](xi) / Y_l(xi/|xi|) for a radial factor R of degree l, at |xi| = xi_norm:
///   (hbar |lambda|)^{-d/2} hbar^{-d/2} (-i sgn lambda)^l |eta|^{1-d/2} \int R(r) r^{d/2} J_{d/2-1+l}(|eta| r) dr,
///   |eta| = xi_norm / (hbar^2 |lambda|).
numerics::Extrapolated dilated_fourier_radial(const SpectralParams& params, int l,
                                              const std::function<cplx(double)>& radial, double xi_norm,
                                              const HankelOptions& options = {});

/// V applied to the Coulomb partial wave, evaluated at ball radius rho in (0, 1):
/// the Hankel transform at |xi| = 1/rho, then M and I. Equals hyperbolic_partial_wave.
cplx fock_map_partial_wave(const SpectralParams& params, int l, double rho, const HankelOptions& options = {});

/// V^- = M o R_{|xi|<1} o D o F_hbar applied to the repulsive partial wave at |xi| = rho.
cplx repulsive_map_partial_wave(const SpectralParams& params, int l, double rho,
                                const HankelOptions& options = {});

/// Sum_{l,m} f_{lm} fock_map_partial_wave(l, |u|) Y_{lm}(u/|u|), 0 < |u| < 1.
cplx fock_map_apply(const SpectralParams& params, const BoundaryData& f, const Point& u,
                    const HankelOptions& options = {});

// ---------------------------------------------------------------------------
// Appendix integral
// ---------------------------------------------------------------------------

/// I_{lambda,l}(xi) = \int_0^1 t^{a-1} (1-t)^{conj(a)-1} (1-2t) / (|xi|^2 - (1-2t)^2)^{(d+1)/2+l} dt,
/// a = (d-1)/2 + l - lambda i, by the substitution t = e^{-u} (and 1 - t = e^{-u}) on each half.
cplx appendix_I_integral(double lambda, int l, int d, double xi_norm);
/// The same quantity through the cosh representation
///   lambda i / (2^{nu-1} (|xi|^2-1)^{(d+1)/2+l} nu) \int_0^inf cos(lambda u) / ((|xi|^2+1)/(|xi|^2-1) + cosh u)^nu du,
/// nu = (d-1)/2 + l.
cplx appendix_I_integral_cosh(double lambda, int l, int d, double xi_norm);

// ---------------------------------------------------------------------------
// Inverse map and Schwinger-type formula
// ---------------------------------------------------------------------------

struct InverseOptions {
  double singular_window = 0.2;  // |s - 1| below this is integrated in u = -ln|s - 1|
  double u_max = 25.0;           // cut-off of the u integral (the subtracted integrand decays like e^{-u})
  double s_max = 400.0;          // exterior cut-off (integrand decays algebraically)
  int nodes = 16;
  double fit_base = 1e-4;        // smallest |s - 1| used to fit the singular behaviour
};

/// Radial inverse of D o F_hbar:  given G(|xi|) on (0, inf) with the sphere singularity
/// G(s) (s - 1) -> A |s-1|^{i lambda} + B |s-1|^{-i lambda} on each side, returns
///   R(r) = hbar^d |lambda|^{d/2} kappa^{d/2+1} (i sgn lambda)^l r^{1-d/2} f.p.\int_0^inf G(s) s^{d/2} J_{d/2-1+l}(kappa r s) ds,
/// kappa = 1/(hbar^2 |lambda|), the finite part being the analytic continuation in the exponent.
cplx inverse_dilated_fourier_radial(const SpectralParams& params, int l, const std::function<cplx(double)>& G,
                                    double r, const InverseOptions& options = {});

/// V^{-1} on the hyperbolic partial wave: I and M^{-1} give the exterior data, the branch
/// rule extends it inside the sphere, then the inverse radial transform. Recovers
/// coulomb_partial_wave(params, l, r).
cplx fock_map_inverse_partial_wave(const SpectralParams& params, int l, double r, const InverseOptions& options = {});

struct InversionCheck {
  cplx lhs;
  cplx rhs;
  double deviation = 0.0;  // |lhs - rhs| / |lhs|
};

/// Compares closed(xi) with -(e^{-pi |lambda|}/|xi|^{d+1}) closed(xi/|xi|^2) for 0 < |xi| < 1.
InversionCheck inversion_symmetry_check(const SpectralParams& params, const Point& xi, const SphereDirection& theta0);

/// Funk–Hecke eigenvalue of the zonal kernel |s e - theta|^{-(d-1-2 lambda i)} on degree-l
/// harmonics (d in {2, 3}), i.e. \int |s e - theta|^{...} Y_l(theta) dtheta = value * Y_l(e).
cplx schwinger_zonal_eigenvalue(double lambda, int d, int l, double s);

/// P[f](x) = F_hbar^{-1} o D^{-1} \int 2^{(d+1)/2} f(theta) dtheta / (|. - theta|^{d-1-2 lambda i} (|.|^2-1)^{1+lambda i}),
/// evaluated degree by degree.
cplx schwinger_poisson(const SpectralParams& params, const BoundaryData& f, const Point& x,
                       const InverseOptions& options = {});

// ---------------------------------------------------------------------------

/// Verification row: (test_id, d, hbar, lambda, index, lhs, rhs, rel_error).
struct VerificationRow {
  std::string test_id;
  int d = 2;
  double hbar = 1.0;
  double lambda = 1.0;
  std::string index;  // l or xi, as text
  cplx lhs;
  cplx rhs;
  double rel_error = 0.0;
};

void write_verification_csv(const std::vector<VerificationRow>& rows, std::ostream& out);

}  // namespace fock::fockmap
