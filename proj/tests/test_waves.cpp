#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "fock/specfun.hpp"
#include "fock/waves.hpp"

using namespace fock::waves;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> grid(double a, double b, double h) {
  std::vector<double> g;
  const int n = static_cast<int>(std::llround((b - a) / h));
  for (int i = 0; i <= n; ++i) g.push_back(a + i * h);
  return g;
}

const SphereDirection e1_2d(Point{1.0, 0.0});

}  // namespace

TEST_CASE("spectral parameters") {
  const SpectralParams p(2, 0.5, 2.0);
  CHECK(p.energy() == doctest::Approx(1.0 / (2.0 * 0.25 * 4.0)));
  CHECK(p.wavenumber() == doctest::Approx(1.0 / (0.25 * 2.0)));
  CHECK_THROWS_AS(SpectralParams(1, 1.0, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SpectralParams(2, 1.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SphereDirection(Point{1.0, 0.1}), std::invalid_argument);
}

TEST_CASE("Coulomb plane wave") {
  for (int d : {2, 3}) {
    const SpectralParams p(d, 1.0, 1.0);
    Point zero(d, 0.0), t(d, 0.0);
    t[0] = 1.0;
    const SphereDirection theta0(t);
    const cplx at0 = p.normalization() * fock::specfun::rgamma(0.5 * (d - 1));
    CHECK(rel(coulomb_plane_wave(p, zero, theta0), at0) <= 1e-14);
    // Forward ray: the third slot of M vanishes.
    Point ray(d, 0.0);
    ray[0] = 3.7;
    CHECK(rel(coulomb_plane_wave(p, ray, theta0), at0 * std::exp(cplx(0.0, 3.7))) <= 1e-13);
    // Repulsive wave at the origin.
    CHECK(rel(repulsive_plane_wave(p, zero, theta0), at0 * std::exp(-M_PI)) <= 1e-14);
  }
  CHECK(std::abs(coulomb_plane_wave(SpectralParams(2, 1.0, 1.0), Point{0.0, 0.0}, e1_2d) - std::sqrt(2.0)) <= 1e-14);
}

TEST_CASE("conjugation in lambda") {
  std::mt19937_64 g(3);
  std::normal_distribution<double> n;
  for (int d : {2, 3}) {
    for (int k = 0; k < 10; ++k) {
      Point x(d), t(d);
      double nt = 0.0;
      for (int i = 0; i < d; ++i) {
        x[i] = 2.0 * n(g);
        t[i] = n(g);
        nt += t[i] * t[i];
      }
      for (double& v : t) v /= std::sqrt(nt);
      const SphereDirection theta0(t);
      const double hbar = 0.8, lam = 1.3;
      CHECK(rel(std::conj(coulomb_plane_wave(SpectralParams(d, hbar, lam), x, theta0)),
                coulomb_plane_wave(SpectralParams(d, hbar, -lam), x, theta0)) <= 1e-12);
      CHECK(rel(std::conj(repulsive_plane_wave(SpectralParams(d, hbar, lam), x, theta0)),
                repulsive_plane_wave(SpectralParams(d, hbar, -lam), x, theta0)) <= 1e-12);
    }
  }
}

TEST_CASE("hyperbolic plane wave") {
  CHECK(std::abs(hyperbolic_plane_wave(1.7, Point{0.0, 0.0}, e1_2d) - cplx(1.0)) <= 1e-15);
  const Point u{0.3, -0.4};
  const double base = (1.0 - 0.25) / ((0.3 - 1.0) * (0.3 - 1.0) + 0.16);
  CHECK(std::abs(std::abs(hyperbolic_plane_wave(2.0, u, e1_2d)) - std::sqrt(base)) <= 1e-14);
  CHECK_THROWS(hyperbolic_plane_wave(1.0, Point{1.2, 0.0}, e1_2d));
}

TEST_CASE("partial waves against frozen quadrature values") {
  // mpmath circle quadrature \int K(x; theta) Y_0(theta) dtheta = R_0 Y_0 (d = 2, hbar = lambda = 1)
  const double y0 = 1.0 / std::sqrt(2.0 * M_PI);
  const SpectralParams p(2, 1.0, 1.0);
  CHECK(rel(coulomb_partial_wave(p, 0, 0.5) * y0, cplx(0.67766775180131856, 0.0)) <= 1e-8);
  CHECK(rel(coulomb_partial_wave(p, 0, 2.0) * y0, cplx(-0.98593133032390142, 0.0)) <= 1e-8);
  CHECK(rel(coulomb_partial_wave(p, 0, 10.0) * y0, cplx(0.48615657125254316, 0.0)) <= 1e-8);
  CHECK(coulomb_partial_wave(p, 2, 0.0) == cplx(0.0));
  CHECK(rel(hyperbolic_partial_wave(1.0, 2, 0, 0.5) * y0, cplx(1.6854663230295597, 0.0)) <= 1e-9);
  // cos-mode at u = (0.3, 0): \int e_2 cos(theta)/sqrt(pi) dtheta / (1/sqrt(pi))
  CHECK(rel(hyperbolic_partial_wave(2.0, 2, 1, 0.3), cplx(0.76321266045230191, -3.0528506418092083)) <= 1e-9);
  CHECK(rel(std::conj(hyperbolic_partial_wave(1.5, 3, 2, 0.6)), hyperbolic_partial_wave(-1.5, 3, 2, 0.6)) <= 1e-13);
  // At the centre e_lambda(0; .) = 1, so R_0(0) = |S^{d-1}|.
  CHECK(rel(hyperbolic_partial_wave(1.0, 2, 0, 0.0), cplx(2.0 * M_PI)) <= 1e-9);
  CHECK(rel(hyperbolic_partial_wave(1.0, 3, 0, 0.0), cplx(4.0 * M_PI)) <= 1e-9);
  CHECK(rel(hyperbolic_partial_wave(1.0, 3, 0, 1e-3), cplx(4.0 * M_PI)) <= 1e-5);
}

TEST_CASE("synthesis equals kernel quadrature") {
  const SpectralParams p(3, 1.0, 1.0);
  const auto f = BoundaryData::random(3, 4, 11);
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<Point> pts;
  for (int k = 0; k < 5; ++k) pts.push_back(Point{u(g), u(g), u(g)});
  const auto field = poisson_synthesize(WaveKind::coulomb, p, f, pts);
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(rel(field.values[k], kernel_quadrature(WaveKind::coulomb, p, f, pts[k])) <= 1e-7);

  std::vector<Point> ball;
  for (int k = 0; k < 5; ++k) ball.push_back(Point{u(g) / 3.0, u(g) / 3.0, u(g) / 3.0});
  const auto hyp = poisson_synthesize(WaveKind::hyperbolic, p, f, ball);
  for (std::size_t k = 0; k < ball.size(); ++k) CHECK(rel(hyp.values[k], kernel_quadrature(WaveKind::hyperbolic, p, f, ball[k])) <= 1e-7);
}

TEST_CASE("single modes and radial synthesis") {
  const SpectralParams p(2, 1.0, 1.0);
  const auto mode = BoundaryData::mode(2, 3, 2, 1);
  const Point x{0.4, 0.9};
  const double r = norm(x);
  const Point unit{x[0] / r, x[1] / r};
  const auto out = poisson_synthesize(WaveKind::coulomb, p, mode, {x});
  CHECK(rel(out.values[0], coulomb_partial_wave(p, 2, r) * real_harmonic(2, 2, 1, unit)) <= 1e-13);

  const auto y0 = BoundaryData::mode(2, 0, 0, 0);
  std::vector<Point> circle;
  for (int k = 0; k < 12; ++k) circle.push_back(Point{0.5 * std::cos(0.5 * k), 0.5 * std::sin(0.5 * k)});
  const auto radial = poisson_synthesize(WaveKind::hyperbolic, p, y0, circle);
  for (const auto& v : radial.values) CHECK(std::abs(v - radial.values[0]) <= 1e-10);
}

TEST_CASE("eigen-equation residuals converge at second order") {
  const SpectralParams p3(3, 1.0, 1.0);
  const double coarse = eigen_residual_coulomb(p3, 1, grid(1.0, 5.0, 2e-3));
  const double fine = eigen_residual_coulomb(p3, 1, grid(1.0, 5.0, 1e-3));
  CHECK(fine <= 1e-4);
  CHECK(coarse / fine >= 3.5);
  CHECK(coarse / fine <= 4.5);

  const double rc = eigen_residual_repulsive(p3, 1, grid(1.0, 5.0, 2e-3));
  const double rf = eigen_residual_repulsive(p3, 1, grid(1.0, 5.0, 1e-3));
  CHECK(rf <= 1e-4);
  CHECK(rc / rf >= 3.5);
  CHECK(rc / rf <= 4.5);

  const double hc = eigen_residual_hyperbolic(1.0, 2, 0, grid(0.1, 0.8, 2e-3));
  const double hf = eigen_residual_hyperbolic(1.0, 2, 0, grid(0.1, 0.8, 1e-3));
  CHECK(hf <= 1e-4);
  CHECK(hc / hf >= 3.5);
  CHECK(hc / hf <= 4.5);
  CHECK(std::abs(eigen_residual_hyperbolic(-1.0, 2, 0, grid(0.1, 0.8, 1e-3)) - hf) <= 1e-12);
}

TEST_CASE("hyperbolic plane wave satisfies the Laplace–Beltrami equation") {
  const std::vector<Point> pts{{0.1, 0.2}, {-0.4, 0.3}, {0.5, -0.5}, {0.0, 0.7}};
  CHECK(eigen_residual_hyperbolic_plane_wave(1.0, e1_2d, pts, 1e-3) <= 1e-4);
}

TEST_CASE("wave field CSV") {
  const SpectralParams p(2, 1.0, 1.0);
  const auto field = poisson_synthesize(WaveKind::coulomb, p, BoundaryData::mode(2, 0, 0, 0), {{1.0, 0.0}, {0.0, 2.0}});
  std::ostringstream out;
  write_wavefield_csv(field, out);
  const std::string s = out.str();
  CHECK(s.find("x1,x2,re,im") != std::string::npos);
  CHECK(s.find("coulomb") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}
