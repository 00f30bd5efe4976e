// Complex-parameter special functions: log-gamma, Olver's regularised confluent
// hypergeometric function, Bessel J, conical Legendre functions, Gegenbauer
// polynomials and the Harish-Chandra c-function.
#pragma once

#include <complex>
#include <stdexcept>

namespace fock::specfun {

using cplx = std::complex<double>;

/// Principal (analytically continued, real on the positive axis) branch of log Gamma(z).
/// Throws std::domain_error at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);
cplx gamma(cplx z);
/// 1/Gamma(z); entire, returns 0 at the poles.
cplx rgamma(cplx z);
/// (a)_k = Gamma(a+k)/Gamma(a) by direct product.
cplx pochhammer(cplx a, int k);

struct RegimePolicy {
  double series_radius = 60.0;  // convergent evaluation for |z| <= series_radius
  int asymptotic_terms = 60;    // cap on each Poincare sum (optimal truncation below the cap)
  void validate() const;
};

enum class MRegime { series, asymptotic };

struct MEvaluation {
  cplx value;
  MRegime regime = MRegime::series;
  double remainder_estimate = 0.0;  // relative; asymptotic regime only
  bool precision_loss = false;      // remainder estimate above 1e-8
};

/// Olver's M(a;b;z) = sum_k (a)_k z^k / (Gamma(b+k) k!), with diagnostics.
MEvaluation olver_M_eval(cplx a, cplx b, cplx z, const RegimePolicy& policy = {});
inline cplx olver_M(cplx a, cplx b, cplx z, const RegimePolicy& policy = {}) {
  return olver_M_eval(a, b, z, policy).value;
}
/// Convergent evaluation (Maclaurin near 0, then re-centred Taylor steps of Kummer's equation).
cplx olver_M_series(cplx a, cplx b, cplx z);
/// Poincare expansion with both exponential branches, optimally truncated below `max_terms`.
MEvaluation olver_M_asymptotic(cplx a, cplx b, cplx z, int max_terms);

/// J_nu(x) for real nu >= 0, x >= 0.
double bessel_j(double nu, double x);

/// P^{-mu}_{-1/2 + i lambda}(x), x > 1, mu >= 0, via its Laplace-type integral.
double conical_legendre_P(double lambda, double mu, double x);
/// The same function divided by (x^2 - 1)^{mu/2}; defined for x >= 1 and smooth at x = 1.
double conical_legendre_reduced(double lambda, double mu, double x);
/// \int_0^\infty cos(lambda t) (x + cosh t)^{-nu} dt for x >= 1, nu > 0 (contour-shifted quadrature).
double conical_laplace_integral(double lambda, double nu, double x);

/// Gegenbauer C_l^alpha(t); alpha = 0 uses the Chebyshev limit (2/l) T_l(t), C_0 = 1.
double gegenbauer_C(int l, double alpha, double t);

/// Harish-Chandra c-function of hyperbolic d-space.
cplx harish_chandra_c(double lambda, int d);
/// |c(lambda)|^{-2}; returns 0 at lambda = 0 (limit of the pole of Gamma(i lambda)).
double plancherel_density(double lambda, int d);

}  // namespace fock::specfun
