#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fock/csv.hpp"
#include "fock/fockmap.hpp"

namespace fock::fockmap {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : -1.0; }

double distance2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

void check_dims(const SpectralParams& params, const Point& xi, const SphereDirection& theta0, const char* who) {
  params.validate();
  if (static_cast<int>(xi.size()) != params.d || theta0.dim() != params.d)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

cplx sphere_symbol(double xi_norm2, double lambda) {
  const double q = xi_norm2 - 1.0;
  if (q == 0.0) throw std::domain_error("sphere_symbol: |xi| = 1 is singular");
  const double arg = q > 0.0 ? 0.0 : -sgn(lambda) * M_PI;
  const cplx log_q(std::log(std::abs(q)), arg);
  return std::exp(-cplx(1.0, lambda) * log_q);
}

cplx interior_branch_factor(double lambda) {
  return std::exp(cplx(1.0, lambda) * cplx(0.0, -sgn(lambda) * M_PI));
}

cplx fourier_closed_form(const SpectralParams& params, const Point& xi, const SphereDirection& theta0) {
  check_dims(params, xi, theta0, "fourier_closed_form");
  const double dist2 = distance2(xi, theta0.theta);
  if (dist2 == 0.0) throw std::domain_error("fourier_closed_form: xi = theta0 is singular");
  const double b = 0.5 * (params.d - 1.0);
  const double n2 = waves::dot(xi, xi);
  // |xi - theta0|^{-(d-1-2 lambda i)} = exp(-(b - lambda i) log |xi - theta0|^2)
  const cplx dist_factor = std::exp(-cplx(b, -params.lambda) * std::log(dist2));
  return std::pow(2.0, 0.5 * (params.d + 1.0)) * sphere_symbol(n2, params.lambda) * dist_factor;
}

FourierSideValue fourier_closed_form_tagged(const SpectralParams& params, const Point& xi,
                                            const SphereDirection& theta0) {
  FourierSideValue out;
  out.xi = xi;
  out.value = fourier_closed_form(params, xi, theta0);
  out.branch_tag = waves::dot(xi, xi) > 1.0 ? BranchTag::exterior : BranchTag::interior;
  return out;
}

cplx fourier_regularized(const SpectralParams& params, const Point& xi, const SphereDirection& theta0, double eps) {
  check_dims(params, xi, theta0, "fourier_regularized");
  if (!(eps > 0.0)) throw std::invalid_argument("fourier_regularized: eps must be positive");
  const double lam = params.lambda;
  const double s = sgn(lam);
  const double b = 0.5 * (params.d - 1.0);
  const double e2 = eps * eps, e4 = e2 * e2;
  const cplx Q(waves::dot(xi, xi) - 1.0 + e4, -2.0 * s * e2);
  const double P = distance2(xi, theta0.theta) + e4;
  const cplx a(eps, lam);         // eps + lambda i
  const cplx c = cplx(b, 0.0) - a;  // b - eps - lambda i
  const cplx bracket = e2 * (1.0 + c * Q / (a * P)) - cplx(0.0, s);
  const cplx denom_log = (1.0 + a) * std::log(Q) + c * std::log(P);
  return std::pow(2.0, 0.5 * (params.d + 1.0)) * a / std::abs(lam) * bracket * std::exp(-denom_log);
}

numerics::Extrapolated fourier_regularized_limit(const SpectralParams& params, const Point& xi,
                                                 const SphereDirection& theta0, const std::vector<double>& ladder,
                                                 int order) {
  std::vector<std::pair<double, cplx>> samples;
  samples.reserve(ladder.size());
  for (double eps : ladder) samples.emplace_back(eps, fourier_regularized(params, xi, theta0, eps));
  return numerics::richardson_extrapolate(samples, order);
}

double multiplier(int d, double xi_norm) {
  return std::pow(std::abs(0.5 * (xi_norm * xi_norm - 1.0)), 0.5 * (d + 1.0));
}

InversionCheck inversion_symmetry_check(const SpectralParams& params, const Point& xi, const SphereDirection& theta0) {
  check_dims(params, xi, theta0, "inversion_symmetry_check");
  const double n2 = waves::dot(xi, xi);
  if (!(n2 > 0.0 && n2 < 1.0)) throw std::domain_error("inversion_symmetry_check: need 0 < |xi| < 1");
  Point inv(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) inv[i] = xi[i] / n2;
  InversionCheck out;
  out.lhs = fourier_closed_form(params, xi, theta0);
  out.rhs = -std::exp(-M_PI * std::abs(params.lambda)) / std::pow(std::sqrt(n2), params.d + 1.0) *
            fourier_closed_form(params, inv, theta0);
  out.deviation = std::abs(out.lhs - out.rhs) / std::abs(out.lhs);
  return out;
}

void write_verification_csv(const std::vector<VerificationRow>& rows, std::ostream& out) {
  csv::write_row(out, {"test_id", "d", "hbar", "lambda", "index", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_error"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.test_id, csv::num(r.d), csv::num(r.hbar), csv::num(r.lambda), r.index,
                         csv::num(r.lhs.real()), csv::num(r.lhs.imag()), csv::num(r.rhs.real()),
                         csv::num(r.rhs.imag()), csv::num(r.rel_error)});
  }
}

}  // namespace fock::fockmap
