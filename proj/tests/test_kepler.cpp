#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "fock/kepler.hpp"

using namespace fock::kepler;
using fock::numerics::OdeSpec;

namespace {

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double norm(const Vec& a) { return dist(a, Vec(a.size(), 0.0)); }

const PhasePoint on_shell_half{{0.0, 1.0}, {std::sqrt(3.0), 0.0}};  // H+ = 1/2

}  // namespace

TEST_CASE("Hamiltonians") {
  CHECK(hamiltonian(Branch::attractive, {{1.0, 0.0}, {0.0, 1.0}}) == doctest::Approx(-0.5));
  CHECK(hamiltonian(Branch::attractive, {{1.0, 0.0}, {0.0, 2.0}}) == doctest::Approx(1.0));
  CHECK(hamiltonian(Branch::repulsive, {{1.0, 0.0}, {0.0, 2.0}}) == doctest::Approx(3.0));
}

TEST_CASE("Moser map") {
  std::mt19937_64 g(1);
  std::normal_distribution<double> n;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const PhasePoint p{{n(g), n(g), n(g)}, {n(g), n(g), n(g)}};
    const double E = 0.3 + std::abs(n(g));
    const auto back = moser_inverse(E, moser_map(E, p));
    worst = std::max({worst, dist(back.x, p.x), dist(back.xi, p.xi)});
    // |u| = p0 / |xi|
    CHECK(std::abs(norm(moser_map(E, p).u) - std::sqrt(2.0 * E) / norm(p.xi)) <= 1e-13);
  }
  CHECK(worst <= 1e-12);

  const auto q = moser_map(0.5, on_shell_half);
  CHECK(on_ball_sheet(q));
  CHECK(std::abs(norm(q.u) - 1.0 / std::sqrt(3.0)) <= 1e-15);
  CHECK(std::abs(covector_norm(q) - 1.0) <= 1e-10);
  // A repulsive on-shell point lands on the exterior sheet with a unit covector.
  const PhasePoint rep{{0.0, 4.0}, {std::sqrt(2.0 * (0.5 - 0.25)), 0.0}};  // H- = 1/2
  const auto qr = moser_map(0.5, rep);
  CHECK_FALSE(on_ball_sheet(qr));
  CHECK(std::abs(covector_norm(qr) - 1.0) <= 1e-10);
  // Off the shell it is not a unit covector.
  CHECK(std::abs(covector_norm(moser_map(0.5, {{0.0, 2.0}, {2.0, 0.0}})) - 1.0) > 1e-3);
  CHECK(conformal_factor({0.5, 0.0}) == doctest::Approx(2.0 / 0.75));
}

TEST_CASE("symplectic pullback") {
  const fock::numerics::VectorMap linear = [](const Eigen::VectorXd& v) {
    Eigen::VectorXd w(4);
    w << 2.0 * v(0), 2.0 * v(1), v(2), v(3);
    return w;
  };
  Eigen::VectorXd p(4);
  p << 0.1, 0.2, 0.3, 0.4;
  CHECK(symplectic_deviation(linear, p, 1e-3, 2.0) <= 1e-12);
  const double fine = symplectic_pullback_check(0.5, on_shell_half, 1e-4);
  CHECK(fine <= 1e-6);
  const double ratio = symplectic_pullback_check(0.5, on_shell_half, 1e-3) / symplectic_pullback_check(0.5, on_shell_half, 5e-4);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("Kepler flow") {
  const OdeSpec spec;
  CHECK(std::abs(kepler_period({{1.0, 0.0}, {0.0, 1.0}}, spec) - 2.0 * M_PI) <= 1e-6);
  // Period scaling 2 pi / p0^3 for the circular orbit of radius 4 (E = -1/8).
  CHECK(std::abs(kepler_period({{4.0, 0.0}, {0.0, 0.5}}, spec) - 2.0 * M_PI * 8.0) <= 1e-5);

  std::vector<double> times;
  for (int i = 0; i <= 200; ++i) times.push_back(0.1 * i);
  const PhasePoint hyp{{1.0, 0.0}, {0.3, std::sqrt(4.0 - 0.09)}};
  const auto traj = kepler_flow(Branch::attractive, hyp, 20.0, spec, times);
  CHECK(traj.size() == times.size());
  CHECK(conserved_drift(Branch::attractive, traj) <= 1e-8);
  const auto fit = momentum_circle_fit(traj);
  const auto cs = conserved_quantities(Branch::attractive, hyp);
  CHECK(std::abs(fit.radius - 1.0 / cs.L_norm()) <= 1e-6);
  // Asymptotically straight: the direction of motion settles.
  const auto a = phase_point_from_state(traj.states[190]);
  const auto b = phase_point_from_state(traj.states[200]);
  CHECK(std::abs(a.xi[0] * b.xi[1] - a.xi[1] * b.xi[0]) / (norm(a.xi) * norm(b.xi)) <= 1e-2);

  const auto circ = kepler_flow(Branch::attractive, {{1.0, 0.0}, {0.0, 1.0}}, 20.0, spec, times);
  const auto cfit = momentum_circle_fit(circ);
  CHECK(std::abs(cfit.radius - 1.0) <= 1e-9);
  CHECK(norm(cfit.center) <= 1e-9);
  // Doubling the angular momentum at fixed R halves the hodograph radius.
  const auto big = kepler_flow(Branch::attractive, {{4.0, 0.0}, {0.0, 0.5}}, 60.0, spec);
  CHECK(std::abs(momentum_circle_fit(big).radius - 0.5) <= 1e-8);

  const auto repulsive = kepler_flow(Branch::repulsive, {{-3.0, 1.0}, {1.5, 0.0}}, 20.0, spec, times);
  CHECK(conserved_drift(Branch::repulsive, repulsive) <= 50.0 * spec.rel_tol);
}

TEST_CASE("radial collision orbit") {
  const OdeSpec spec;
  const PhasePoint radial{{1.0, 0.0}, {-0.2, 0.0}};
  const double E = hamiltonian(Branch::attractive, radial);
  // Falls in, reflects, and passes r = 1 again after twice the fall time (explicit quadrature of
  // the radial equation), moving outwards with the same speed.
  const double t_return = 2.0 * radial_fall_time(E, 1.0);
  const auto traj = kepler_flow(Branch::attractive, radial, t_return, spec, {t_return});
  REQUIRE(traj.size() >= 1);
  const auto back = phase_point_from_state(traj.states.back());
  CHECK(std::abs(norm(back.x) - 1.0) <= 1e-5);
  CHECK(back.xi[0] == doctest::Approx(0.2).epsilon(1e-4));
  double drift = 0.0;
  const auto dense = kepler_flow(Branch::attractive, radial, 3.0, spec);
  for (const auto& s : dense.states) drift = std::max(drift, std::abs(hamiltonian(Branch::attractive, phase_point_from_state(s)) - E));
  CHECK(drift / std::abs(E) <= 1e-6);
}

TEST_CASE("Runge–Lenz identity") {
  const auto circ = conserved_quantities(Branch::attractive, {{1.0, 0.0}, {0.0, 1.0}});
  CHECK(circ.R_norm() <= 1e-15);
  CHECK(circ.L_norm() == doctest::Approx(1.0));
  const auto collision = conserved_quantities(Branch::attractive, {{2.0, 0.0}, {0.7, 0.0}});
  CHECK(collision.L_norm() == 0.0);
  CHECK(collision.R_norm() == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 g(4);
  std::normal_distribution<double> n;
  for (int k = 0; k < 50; ++k) {
    const PhasePoint p{{n(g), n(g), n(g)}, {n(g), n(g), n(g)}};
    for (Branch b : {Branch::attractive, Branch::repulsive}) {
      const auto c = conserved_quantities(b, p);
      const double rhs = 1.0 + 2.0 * c.energy * c.L_norm() * c.L_norm();
      CHECK(std::abs(c.R_norm() * c.R_norm() - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("cogeodesic flow") {
  const OdeSpec spec;
  const HyperbolicCotangentPoint diameter{{0.5, 0.0}, {-1.0, 0.0}};
  const auto q = geodesic_flow(diameter, 1.0, spec);
  CHECK(std::abs(q.u[1]) <= 1e-14);
  CHECK(std::abs(hyperbolic_distance(diameter.u, q.u) - 1.0) <= 1e-8);
  const auto q0 = moser_map(0.5, on_shell_half);
  for (double s : {0.5, 2.5, 5.0}) {
    const auto qs = geodesic_flow(q0, s, spec);
    CHECK(std::abs(covector_norm(qs) - 1.0) <= 1e-9);
    CHECK(std::abs(hyperbolic_distance(q0.u, qs.u) - s) <= 1e-8);
  }
}

TEST_CASE("flow correspondence and time change") {
  const OdeSpec spec;
  CHECK(flow_correspondence_check(Branch::attractive, 0.5, on_shell_half, 5.0, 51, spec).max_deviation <= 1e-6);
  const PhasePoint rep{{3.0, 1.0}, {0.0, 0.0}};
  PhasePoint start = rep;
  const double k = std::sqrt(2.0 * (0.5 - 1.0 / std::sqrt(10.0)));
  start.xi = {0.6 * k, 0.8 * k};
  CHECK(flow_correspondence_check(Branch::repulsive, 0.5, start, 5.0, 51, spec).max_deviation <= 1e-6);

  const auto q0 = moser_map(0.5, on_shell_half);
  std::vector<double> s;
  for (int i = 1; i <= 10; ++i) s.push_back(0.5 * i);
  const auto t_half = kepler_time_along_geodesic(Branch::attractive, 0.5, q0, s, spec);
  const auto t_two = kepler_time_along_geodesic(Branch::attractive, 2.0, q0, s, spec);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(t_two[i] * 8.0 - t_half[i]) <= 1e-8 * t_half[i]);
}

TEST_CASE("trajectory CSV") {
  const auto traj = kepler_flow(Branch::attractive, {{1.0, 0.0}, {0.0, 1.0}}, 1.0, OdeSpec{}, {0.0, 0.5, 1.0});
  std::ostringstream out;
  write_trajectory_csv(Branch::attractive, traj, out);
  CHECK(out.str().rfind("t,x1,x2,xi1,xi2,E,L,R", 0) == 0);
}
