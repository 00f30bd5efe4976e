#include <algorithm>
#include <limits>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fock/csv.hpp"
#include "fock/numerics.hpp"
#include "fock/scattering.hpp"
#include "fock/specfun.hpp"

namespace fock::scattering {

namespace {

void check_common(double lambda, int d, const char* who) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw std::domain_error(std::string(who) + ": lambda must be nonzero");
  if (d < 2) throw std::invalid_argument(std::string(who) + ": d must be >= 2");
}

// 2^{-2 lambda i} pi^{-(d-1)/2} Gamma(b - lambda i) / Gamma(lambda i)
cplx kernel_constant(double lambda, int d) {
  const double b = 0.5 * (d - 1.0);
  const cplx log_c = cplx(0.0, -2.0 * lambda * M_LN2) - b * std::log(M_PI) + specfun::log_gamma(cplx(b, -lambda)) -
                     specfun::log_gamma(cplx(0.0, lambda));
  return std::exp(log_c);
}

}  // namespace

cplx s_kernel(double lambda, int d, const SphereDirection& theta, const SphereDirection& theta_prime) {
  check_common(lambda, d, "s_kernel");
  if (theta.dim() != d || theta_prime.dim() != d) throw std::invalid_argument("s_kernel: dimension mismatch");
  double dist2 = 0.0;
  for (int i = 0; i < d; ++i) dist2 += (theta.theta[i] - theta_prime.theta[i]) * (theta.theta[i] - theta_prime.theta[i]);
  if (dist2 == 0.0) throw std::domain_error("s_kernel: coincident directions");
  const double b = 0.5 * (d - 1.0);
  return kernel_constant(lambda, d) * std::exp(-cplx(b, -lambda) * std::log(dist2));
}

cplx s_eigenvalue(double lambda, int d, int l) {
  check_common(lambda, d, "s_eigenvalue");
  if (l < 0) throw std::invalid_argument("s_eigenvalue: l must be >= 0");
  const double b = 0.5 * (d - 1.0) + l;
  // Conjugate Gamma values: the ratio is exp(-2 i Im log Gamma(b + lambda i)).
  const double phase = specfun::log_gamma(cplx(b, lambda)).imag();
  return std::polar(1.0, -2.0 * phase);
}

ScatteringEigenvalue s_eigenvalue_record(double lambda, int d, int l) {
  return {l, lambda, d, s_eigenvalue(lambda, d, l)};
}

cplx funk_hecke_eigenvalue(double lambda, int d, int l, const FunkHeckeOptions& options) {
  check_common(lambda, d, "funk_hecke_eigenvalue");
  if (l < 0) throw std::invalid_argument("funk_hecke_eigenvalue: l must be >= 0");
  const double alpha = 0.5 * (d - 2.0);
  const double b = 0.5 * (d - 1.0);
  const double c1 = specfun::gegenbauer_C(l, alpha, 1.0);
  // With v = 1 - t:  k(t)(1-t^2)^{(d-3)/2} = K 2^{-b + lambda i} v^{-1 + lambda i} H(v),
  // H(v) = (2 - v)^{(d-3)/2} C(1 - v) / C(1).
  auto H = [&](double v) { return std::pow(2.0 - v, 0.5 * (d - 3.0)) * specfun::gegenbauer_C(l, alpha, 1.0 - v) / c1; };
  auto vpow = [&](double v) { return std::exp(cplx(-1.0, lambda) * std::log(v)); };
  const double H0 = std::pow(2.0, 0.5 * (d - 3.0));
  const int n = options.nodes;

  // v in [1, 2] through v = 2 - w^2 (removes the (2 - v)^{(d-3)/2} endpoint factor), same for both methods.
  auto upper = [&](double w) {
    const double v = 2.0 - w * w;
    return vpow(v) * std::pow(w, d - 3.0) * specfun::gegenbauer_C(l, alpha, 1.0 - v) / c1 * (2.0 * w);
  };
  const int upper_panels = std::max(1, static_cast<int>(std::ceil((l + 1) / 2.0)));
  cplx integral = numerics::integrate_panels(upper, 0.0, 1.0, upper_panels, n);

  if (options.method == EndpointMethod::finite_part) {
    // \int_0^1 v^{-1+lambda i} (H(v) - H(0)) dv on panels graded towards v = 0, plus H(0) / (lambda i).
    auto lower = [&](double v) { return vpow(v) * (H(v) - H0); };
    double hi = 1.0;
    for (int k = 0; k < 60; ++k) {
      const double lo = 0.5 * hi;
      integral += numerics::integrate_panels(lower, lo, hi, k == 0 ? std::max(1, l / 2) : 1, n);
      hi = lo;
    }
    integral += H0 / cplx(0.0, lambda);
  } else {
    // \int_0^1 v^{-1+lambda i} H(v) dv = \int_0^inf e^{-lambda i s} H(e^{-s}) ds, Abel damped.
    numerics::QuadratureSpec spec;
    spec.node_count = n;
    spec.damping_ladder.clear();
    for (double e : options.ladder) spec.damping_ladder.push_back(e * std::abs(lambda));
    spec.extrapolation_order = options.order;
    spec.panel_width = std::min(1.0, 1.0 / std::abs(lambda));
    spec.tolerance = 1e-6;
    spec.tail_tolerance = 1e-16;
    auto f = [&](double s) { return std::polar(1.0, -lambda * s) * H(std::exp(-s)); };
    integral += numerics::integrate_damped_oscillatory(f, std::numeric_limits<double>::infinity(), spec).value;
  }
  const double sphere = 2.0 * std::pow(M_PI, b) / std::tgamma(b);  // |S^{d-2}|
  const cplx two_pow = std::exp(cplx(-b, lambda) * M_LN2);
  return kernel_constant(lambda, d) * sphere * two_pow * integral;
}

double plancherel_density(double lambda, int d) { return specfun::plancherel_density(lambda, d); }

ScatteringRow scattering_row(double lambda, int d, int l, const FunkHeckeOptions& options) {
  ScatteringRow row;
  row.l = l;
  row.lambda = lambda;
  row.d = d;
  row.eigenvalue = s_eigenvalue(lambda, d, l);
  row.funk_hecke = funk_hecke_eigenvalue(lambda, d, l, options);
  row.rel_error = std::abs(row.funk_hecke - row.eigenvalue) / std::abs(row.eigenvalue);
  return row;
}

void write_scattering_csv(const std::vector<ScatteringRow>& rows, std::ostream& out) {
  csv::write_row(out, {"l", "lambda", "d", "eigenvalue_re", "eigenvalue_im", "funk_hecke_re", "funk_hecke_im",
                       "rel_error"});
  for (const auto& r : rows) {
    csv::write_row(out, {csv::num(r.l), csv::num(r.lambda), csv::num(r.d), csv::num(r.eigenvalue.real()),
                         csv::num(r.eigenvalue.imag()), csv::num(r.funk_hecke.real()), csv::num(r.funk_hecke.imag()),
                         csv::num(r.rel_error)});
  }
}

}  // namespace fock::scattering
