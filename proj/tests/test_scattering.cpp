#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fock/scattering.hpp"
#include "fock/specfun.hpp"

using namespace fock::scattering;
using fock::waves::Point;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("scattering kernel") {
  const SphereDirection a(Point{1.0, 0.0}), b(Point{-1.0, 0.0}), c(Point{0.6, 0.8});
  for (int d : {2}) {
    const double lam = 1.3;
    const cplx expected = std::pow(M_PI, -0.5 * (d - 1)) * std::pow(2.0, -(d - 1.0)) *
                          fock::specfun::gamma(cplx(0.5 * (d - 1), -lam)) / fock::specfun::gamma(cplx(0.0, lam));
    CHECK(rel(s_kernel(lam, d, a, b), expected) <= 1e-13);
    CHECK(rel(std::conj(s_kernel(lam, d, a, c)), s_kernel(-lam, d, a, c)) <= 1e-13);
  }
  // The modulus depends only on |theta - theta'|.
  const SphereDirection p(Point{0.0, 0.0, 1.0}), q(Point{0.6, 0.0, 0.8}), r(Point{0.0, -0.6, 0.8});
  CHECK(std::abs(std::abs(s_kernel(2.0, 3, p, q)) - std::abs(s_kernel(2.0, 3, p, r))) <= 1e-14);
  CHECK_THROWS_AS(s_kernel(1.0, 2, a, a), std::domain_error);
  CHECK_THROWS_AS(s_kernel(0.0, 2, a, b), std::domain_error);
}

TEST_CASE("scattering eigenvalues") {
  CHECK(std::abs(s_eigenvalue(1.0, 3, 0) - cplx(0.82347878764393348, 0.56734705983240762)) <= 1e-13);
  CHECK(std::abs(s_eigenvalue(1.0, 2, 3) - cplx(-0.6213806576548028, -0.78350882464238063)) <= 1e-13);
  CHECK(std::abs(std::arg(s_eigenvalue(1.0, 3, 0)) - std::remainder(-2.0 * std::arg(fock::specfun::gamma(cplx(1.0, 1.0))), 2.0 * M_PI)) <= 1e-13);
  for (int d : {2, 3, 4})
    for (double lam : {0.5, 1.0, 2.0})
      for (int l = 0; l < 6; ++l) {
        const cplx s = s_eigenvalue(lam, d, l);
        CHECK(std::abs(std::abs(s) - 1.0) <= 1e-14);
        const cplx shift = cplx(l + 0.5 * (d - 1), -lam) / cplx(l + 0.5 * (d - 1), lam);
        CHECK(rel(s_eigenvalue(lam, d, l + 1) / s, shift) <= 1e-13);
        CHECK(std::abs(s * s_eigenvalue(-lam, d, l) - 1.0) <= 1e-13);
      }
  const auto rec = s_eigenvalue_record(2.0, 3, 4);
  CHECK(rec.l == 4);
  CHECK(rec.value == s_eigenvalue(2.0, 3, 4));
}

TEST_CASE("Funk–Hecke quadrature of the kernel") {
  CHECK(rel(funk_hecke_eigenvalue(1.0, 2, 0), s_eigenvalue(1.0, 2, 0)) <= 1e-6);
  CHECK(rel(funk_hecke_eigenvalue(1.0, 2, 3), s_eigenvalue(1.0, 2, 3)) <= 1e-6);
  CHECK(rel(funk_hecke_eigenvalue(2.0, 3, 1), s_eigenvalue(2.0, 3, 1)) <= 1e-6);
  // The Abel-damped endpoint treatment reaches the same value.
  FunkHeckeOptions abel;
  abel.method = EndpointMethod::abel_damped;
  CHECK(rel(funk_hecke_eigenvalue(1.0, 2, 3, abel), s_eigenvalue(1.0, 2, 3)) <= 1e-6);
  CHECK(rel(funk_hecke_eigenvalue(2.0, 3, 1, abel), s_eigenvalue(2.0, 3, 1)) <= 1e-6);
}

TEST_CASE("Plancherel density") {
  CHECK(plancherel_density(1.5, 3) == doctest::Approx(plancherel_density(-1.5, 3)).epsilon(1e-15));
  CHECK(std::abs(plancherel_density(2.0, 3) / plancherel_density(1.0, 3) - 4.0) <= 1e-12);
  CHECK(plancherel_density(1e-6, 2) < 1e-10);
}

TEST_CASE("scattering CSV") {
  std::ostringstream out;
  write_scattering_csv({scattering_row(1.0, 2, 1)}, out);
  CHECK(out.str().rfind("l,lambda,d,eigenvalue_re,eigenvalue_im,funk_hecke_re,funk_hecke_im,rel_error", 0) == 0);
}
