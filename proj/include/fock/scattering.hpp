// Scattering matrix of hyperbolic space (equivalently of the Coulomb problem): the
// kernel form, the functional-calculus eigenvalues and their Funk–Hecke equivalence.
#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "fock/waves.hpp"

namespace fock::scattering {

using cplx = std::complex<double>;
using waves::SphereDirection;

struct ScatteringEigenvalue {
  int l = 0;
  double lambda = 1.0;
  int d = 2;
  cplx value;
};

/// 2^{-2 lambda i} pi^{-(d-1)/2} Gamma((d-1)/2 - lambda i) / Gamma(lambda i) |theta - theta'|^{-(d-1-2 lambda i)}.
/// Throws std::domain_error for coincident directions or lambda = 0.
cplx s_kernel(double lambda, int d, const SphereDirection& theta, const SphereDirection& theta_prime);

/// Gamma(l + (d-1)/2 - lambda i) / Gamma(l + (d-1)/2 + lambda i), the eigenvalue on degree-l harmonics.
cplx s_eigenvalue(double lambda, int d, int l);
ScatteringEigenvalue s_eigenvalue_record(double lambda, int d, int l);

/// Regularization of the endpoint behaviour (1-t)^{-1+lambda i} of the Funk–Hecke integral,
/// which is only conditionally defined (its value is the analytic continuation in the exponent).
enum class EndpointMethod {
  finite_part,  // subtract the leading endpoint term and add its continued integral in closed form
  abel_damped,  // substitute 1 - t = e^{-s}, damp by e^{-eps s} and extrapolate eps -> 0
};

struct FunkHeckeOptions {
  EndpointMethod method = EndpointMethod::finite_part;
  int nodes = 16;
  // abel_damped only: ladder in units of |lambda| (the damped integral is analytic for |eps| < |lambda|).
  std::vector<double> ladder{0.04, 0.02, 0.01, 0.005, 0.0025};
  int order = 4;
};

/// |S^{d-2}| / C_l^{(d-2)/2}(1) \int_{-1}^1 k(t) C_l^{(d-2)/2}(t) (1-t^2)^{(d-3)/2} dt with k(t) the kernel at
/// theta . theta' = t. Equals s_eigenvalue.
cplx funk_hecke_eigenvalue(double lambda, int d, int l, const FunkHeckeOptions& options = {});

/// |c(lambda)|^{-2} (Harish-Chandra c-function); 0 at lambda = 0.
double plancherel_density(double lambda, int d);

struct ScatteringRow {
  int l = 0;
  double lambda = 1.0;
  int d = 2;
  cplx eigenvalue;
  cplx funk_hecke;
  double rel_error = 0.0;
};

ScatteringRow scattering_row(double lambda, int d, int l, const FunkHeckeOptions& options = {});

/// CSV with header l,lambda,d,eigenvalue_re,eigenvalue_im,funk_hecke_re,funk_hecke_im,rel_error.
void write_scattering_csv(const std::vector<ScatteringRow>& rows, std::ostream& out);

}  // namespace fock::scattering
