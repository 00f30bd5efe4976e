#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fock/fockmap.hpp"

using namespace fock::fockmap;
using fock::waves::coulomb_partial_wave;
using fock::waves::hyperbolic_partial_wave;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
const SphereDirection e1(Point{1.0, 0.0});

}  // namespace

TEST_CASE("closed-form Fourier transform") {
  const SpectralParams p(2, 1.0, 1.0);
  // 2^{3/2} / ((|xi|^2-1)^{1+i} |xi-theta0|^{1-2i}) in extended precision
  CHECK(rel(fourier_closed_form(p, {2.0, 0.5}, e1), cplx(0.44928954653615534, -0.63565404359340744)) <= 1e-13);
  for (int d : {2, 3}) {
    Point t(d, 0.0), xi(d, 0.0);
    t[0] = 1.0;
    xi[0] = -1.2;
    xi[1] = 0.9;
    const SphereDirection theta0(t);
    const double n2 = 1.44 + 0.81;
    const double dist = std::sqrt(2.2 * 2.2 + 0.81);
    const double modulus = std::pow(2.0, 0.5 * (d + 1)) / ((n2 - 1.0) * std::pow(dist, d - 1));
    CHECK(std::abs(std::abs(fourier_closed_form(SpectralParams(d, 1.0, 1.7), xi, theta0)) - modulus) <= 1e-13 * modulus);
    CHECK(rel(std::conj(fourier_closed_form(SpectralParams(d, 1.0, 1.7), xi, theta0)),
              fourier_closed_form(SpectralParams(d, 1.0, -1.7), xi, theta0)) <= 1e-14);
  }
  CHECK(fourier_closed_form_tagged(p, {0.3, 0.1}, e1).branch_tag == BranchTag::interior);
  CHECK(fourier_closed_form_tagged(p, {3.0, 0.1}, e1).branch_tag == BranchTag::exterior);
  CHECK_THROWS_AS(fourier_closed_form(p, {0.6, 0.8}, e1), std::domain_error);
}

TEST_CASE("branch rule") {
  for (double lam : {0.5, 1.0, -2.0}) CHECK(rel(interior_branch_factor(lam), cplx(-std::exp(M_PI * std::abs(lam)))) <= 1e-14);
  // Outside: arg 0. Inside: arg -sgn(lambda) pi.
  CHECK(rel(sphere_symbol(4.0, 1.0), std::exp(-cplx(1.0, 1.0) * std::log(3.0))) <= 1e-14);
  CHECK(rel(sphere_symbol(0.25, 1.0), std::exp(-cplx(1.0, 1.0) * cplx(std::log(0.75), -M_PI))) <= 1e-14);
  CHECK(rel(sphere_symbol(0.25, -1.0), std::exp(-cplx(1.0, -1.0) * cplx(std::log(0.75), M_PI))) <= 1e-14);
  CHECK_THROWS_AS(sphere_symbol(1.0, 1.0), std::domain_error);
  CHECK(multiplier(3, 3.0) == doctest::Approx(16.0));
}

TEST_CASE("regularized family") {
  const SpectralParams p(2, 1.0, 1.0);
  const Point xi{2.0, 0.5};
  const cplx v = fourier_regularized(p, xi, e1, 0.1);
  CHECK(std::isfinite(v.real()));
  CHECK(std::isfinite(v.imag()));
  CHECK(rel(fourier_regularized_limit(p, xi, e1).value, fourier_closed_form(p, xi, e1)) <= 1e-6);
  CHECK(rel(fourier_regularized_limit(p, {0.4, 0.1}, e1).value, fourier_closed_form(p, {0.4, 0.1}, e1)) <= 1e-6);
  // Smooth across the sphere at fixed eps.
  const cplx inside = fourier_regularized(p, {0.0, 1.0 - 1e-6}, e1, 0.1);
  const cplx outside = fourier_regularized(p, {0.0, 1.0 + 1e-6}, e1, 0.1);
  CHECK(std::abs(inside - outside) <= 1e-3 * std::abs(inside));
  CHECK(rel(std::conj(fourier_regularized(p, xi, e1, 0.1)), fourier_regularized(SpectralParams(2, 1.0, -1.0), xi, e1, 0.1)) <= 1e-13);
}

TEST_CASE("appendix integral: two paths") {
  // mpmath quadrature of the defining integral
  CHECK(std::abs(appendix_I_integral(1.0, 0, 2, 2.0) - cplx(0.0, 0.07014092833030505)) <= 1e-9 * 0.0701);
  CHECK(std::abs(appendix_I_integral(2.0, 1, 3, 1.5) - cplx(0.0, 0.0009962497624465599)) <= 1e-9 * 0.000996);
  CHECK(std::abs(appendix_I_integral(0.5, 3, 2, 3.0) - cplx(0.0, 1.205078615190558e-7)) <= 1e-9 * 1.2e-7);
  for (auto [lam, l, d, x] : {std::tuple{1.0, 0, 2, 2.0}, {2.0, 1, 3, 1.5}, {0.5, 3, 2, 3.0}, {3.0, 2, 3, 1.2}}) {
    const cplx a = appendix_I_integral(lam, l, d, x);
    CHECK(rel(a, appendix_I_integral_cosh(lam, l, d, x)) <= 1e-9);
    CHECK(rel(std::conj(a), appendix_I_integral(-lam, l, d, x)) <= 1e-12);
  }
  CHECK(std::abs(appendix_I_integral(0.0, 1, 2, 2.0)) <= 1e-15);
}

TEST_CASE("Fock map on partial waves") {
  CHECK(rel(fock_map_partial_wave(SpectralParams(2, 1.0, 1.0), 0, 0.5), hyperbolic_partial_wave(1.0, 2, 0, 0.5)) <= 1e-5);
  CHECK(rel(fock_map_partial_wave(SpectralParams(3, 1.0, 2.0), 1, 0.8), hyperbolic_partial_wave(2.0, 3, 1, 0.8)) <= 1e-5);
  // hbar and the sign of lambda enter through the dilation only.
  CHECK(rel(fock_map_partial_wave(SpectralParams(2, 0.7, -1.0), 2, 0.5), hyperbolic_partial_wave(-1.0, 2, 2, 0.5)) <= 1e-5);
}

TEST_CASE("Fock map on boundary data") {
  const SpectralParams p(2, 1.0, 1.0);
  const auto f = BoundaryData::random(2, 3, 9);
  const Point u{0.3, 0.2};
  const auto ref = fock::waves::poisson_synthesize(fock::waves::WaveKind::hyperbolic, p, f, {u});
  CHECK(rel(fock_map_apply(p, f, u), ref.values[0]) <= 1e-5);
}

TEST_CASE("repulsive map, degree zero") {
  CHECK(rel(repulsive_map_partial_wave(SpectralParams(2, 1.0, 1.0), 0, 0.5), hyperbolic_partial_wave(1.0, 2, 0, 0.5)) <= 1e-4);
  CHECK(rel(std::conj(repulsive_map_partial_wave(SpectralParams(2, 1.0, 1.0), 1, 0.5)),
            repulsive_map_partial_wave(SpectralParams(2, 1.0, -1.0), 1, 0.5)) <= 1e-6);
}

TEST_CASE("inversion symmetry") {
  const auto c1 = inversion_symmetry_check(SpectralParams(2, 1.0, 1.0), {0.4, 0.1}, e1);
  CHECK(c1.deviation <= 1e-12);
  const auto c2 = inversion_symmetry_check(SpectralParams(2, 1.0, 2.0), {0.4, 0.1}, e1);
  CHECK(c2.deviation <= 1e-12);
  // Near the sphere both sides blow up together.
  const auto c3 = inversion_symmetry_check(SpectralParams(2, 1.0, 1.0), {0.0, 0.999999}, e1);
  CHECK(c3.deviation <= 1e-9);
  CHECK(std::abs(c3.lhs) > 1e4);  // ~ e^{-pi} / (1 - |xi|^2)
  CHECK_THROWS(inversion_symmetry_check(SpectralParams(2, 1.0, 1.0), {1.5, 0.0}, e1));
}

TEST_CASE("inverse map recovers the Coulomb partial wave") {
  const SpectralParams p(2, 1.0, 1.0);
  const cplx inv = fock_map_inverse_partial_wave(p, 0, 2.0);
  CHECK(rel(inv, coulomb_partial_wave(p, 0, 2.0)) <= 1e-4);
  const SpectralParams m(2, 1.0, -1.0);
  CHECK(rel(fock_map_inverse_partial_wave(m, 0, 2.0), std::conj(inv)) <= 1e-4);
}

TEST_CASE("Schwinger-type formula") {
  const SpectralParams p(2, 1.0, 1.0);
  const auto y0 = BoundaryData::mode(2, 0, 0, 0);
  const Point x{2.0, 0.0};
  const auto ref = fock::waves::poisson_synthesize(fock::waves::WaveKind::coulomb, p, y0, {x});
  CHECK(rel(schwinger_poisson(p, y0, x), ref.values[0]) <= 1e-4);

  // Linearity.
  auto two = y0;
  two.coefficients[0][0] = cplx(2.0, -1.0);
  CHECK(rel(schwinger_poisson(p, two, x), cplx(2.0, -1.0) * schwinger_poisson(p, y0, x)) <= 1e-12);

  // A degree-one mode keeps its angular factor.
  const auto y1 = BoundaryData::mode(2, 1, 1, 0);
  std::vector<cplx> values;
  std::vector<double> harmonic;
  for (double phi : {0.3, 1.1, 2.0, 4.0}) {
    const Point unit{std::cos(phi), std::sin(phi)};
    values.push_back(schwinger_poisson(p, y1, Point{1.5 * unit[0], 1.5 * unit[1]}));
    harmonic.push_back(fock::waves::real_harmonic(2, 1, 0, unit));
  }
  cplx vh = 0.0;
  double vv = 0.0, hh = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    vh += values[i] * harmonic[i];
    vv += std::norm(values[i]);
    hh += harmonic[i] * harmonic[i];
  }
  CHECK(std::abs(vh) / std::sqrt(vv * hh) >= 1.0 - 1e-8);
}

TEST_CASE("verification CSV") {
  std::ostringstream out;
  write_verification_csv({VerificationRow{"theorem", 2, 1.0, 1.0, "l=0", cplx(1.0, 2.0), cplx(1.0, 2.0), 0.0}}, out);
  CHECK(out.str().find("theorem,2,1,1,l=0") != std::string::npos);
}
