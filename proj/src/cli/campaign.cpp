#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "fock/cli.hpp"
#include "fock/csv.hpp"
#include "fock/fockmap.hpp"
#include "fock/kepler.hpp"
#include "fock/scattering.hpp"
#include "fock/waves.hpp"

namespace fock::cli {

namespace {

using waves::Point;
using waves::SpectralParams;
using waves::SphereDirection;
using Task = std::function<std::vector<CampaignRow>()>;

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string fmt_point(const std::vector<double>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + fmt(p[i]);
  return out + ")";
}

double rel_error(cplx lhs, cplx rhs) {
  const double scale = std::abs(rhs);
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
}

CampaignRow make_row(std::string id, int d, double hbar, double lambda, std::string index, cplx lhs, cplx rhs,
                     double tol) {
  CampaignRow row;
  row.test_id = std::move(id);
  row.d = d;
  row.hbar = hbar;
  row.lambda = lambda;
  row.index = std::move(index);
  row.lhs = lhs;
  row.rhs = rhs;
  row.rel_error = rel_error(lhs, rhs);
  row.tolerance = tol;
  return row;
}

/// Row for a quantity that should vanish: the error column is |value| itself.
CampaignRow make_abs_row(std::string id, int d, double hbar, double lambda, std::string index, double value,
                         double tol) {
  return make_row(std::move(id), d, hbar, lambda, std::move(index), value, 0.0, tol);
}

/// A row whose computation raised: recorded as a failure with an infinite error.
CampaignRow error_row(const std::string& id, int d, double hbar, double lambda, const std::string& index,
                      double tol, const std::exception& e) {
  CampaignRow row = make_row(id, d, hbar, lambda, index + " error=" + e.what(), 0.0, 0.0, tol);
  row.rel_error = std::numeric_limits<double>::infinity();
  return row;
}

/// Runs tasks on a small pool; results are concatenated in task order, so reports do not
/// depend on scheduling.
std::vector<CampaignRow> run_tasks(const std::vector<Task>& tasks) {
  std::vector<std::vector<CampaignRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<CampaignRow> rows;
  for (auto& r : results) rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return rows;
}

/// Engine for one named check, independent of the order in which checks run.
std::mt19937_64 engine(std::uint64_t seed, const std::string& check, int d, double lambda) {
  std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(std::hash<std::string>{}(check)),
                    static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(std::llround(lambda * 1e6))};
  return std::mt19937_64(seq);
}

Point random_direction(std::mt19937_64& g, int d) {
  std::normal_distribution<double> n;
  Point p(d);
  double r = 0.0;
  do {
    for (double& v : p) v = n(g);
    r = waves::norm(p);
  } while (r < 1e-8);
  for (double& v : p) v /= r;
  return p;
}

Point scaled(Point p, double s) {
  for (double& v : p) v *= s;
  return p;
}

double distance_to(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

SphereDirection first_axis(int d) {
  Point t(d, 0.0);
  t[0] = 1.0;
  return SphereDirection(t);
}

// ---------------------------------------------------------------------------

std::vector<Task> theorem_tasks(const CampaignConfig& c, bool repulsive) {
  std::vector<Task> tasks;
  const std::string id = repulsive ? "repulsive" : "theorem";
  const double tol = c.tolerance(id, repulsive ? 1e-4 : 1e-5);
  for (int d : c.dims)
    for (double hbar : c.hbars)
      for (double lam : c.lambdas)
        for (int l = 0; l <= c.l_max; ++l)
          tasks.push_back([=] {
            std::vector<CampaignRow> rows;
            const SpectralParams p(d, hbar, lam);
            for (double rho : c.radii) {
              const std::string index = "l=" + std::to_string(l) + ";rho=" + fmt(rho);
              try {
                const cplx lhs = repulsive ? fockmap::repulsive_map_partial_wave(p, l, rho)
                                           : fockmap::fock_map_partial_wave(p, l, rho);
                rows.push_back(make_row(id, d, hbar, lam, index, lhs, waves::hyperbolic_partial_wave(lam, d, l, rho), tol));
              } catch (const std::exception& e) {
                rows.push_back(error_row(id, d, hbar, lam, index, tol, e));
              }
            }
            return rows;
          });
  return tasks;
}

std::vector<Task> lemma_tasks(const CampaignConfig& c) {
  std::vector<Task> tasks;
  const double tol_direct = c.tolerance("lemma_direct", 1e-3);
  const double tol_family = c.tolerance("lemma_family", 1e-6);
  for (int d : c.dims)
    for (double hbar : c.hbars)
      for (double lam : c.lambdas) {
        if (d == 2) {
          for (const Point& xi : {Point{2.0, 0.5}, Point{0.4, 0.1}, Point{-1.5, 1.0}})
            tasks.push_back([=] {
              const SpectralParams p(d, hbar, lam);
              const SphereDirection t0 = first_axis(d);
              try {
                const cplx lhs = fockmap::direct_fourier_transform_2d(p, xi, t0).value;
                return std::vector<CampaignRow>{make_row("lemma_direct", d, hbar, lam, "xi=" + fmt_point(xi), lhs,
                                                         fockmap::fourier_closed_form(p, xi, t0), tol_direct)};
              } catch (const std::exception& e) {
                return std::vector<CampaignRow>{error_row("lemma_direct", d, hbar, lam, "xi=" + fmt_point(xi), tol_direct, e)};
              }
            });
        }
        tasks.push_back([=] {
          std::vector<CampaignRow> rows;
          const SpectralParams p(d, hbar, lam);
          const SphereDirection t0 = first_axis(d);
          auto g = engine(c.seed, "lemma_family", d, lam);
          std::uniform_real_distribution<double> radius(0.2, 3.0);
          for (int k = 0; k < c.random_points; ++k) {
            Point xi;
            do {
              xi = scaled(random_direction(g, d), radius(g));
            } while (std::abs(waves::norm(xi) - 1.0) < 0.1 || distance_to(xi, t0.theta) < 0.1);
            const std::string index = "xi=" + fmt_point(xi);
            try {
              const cplx lhs = fockmap::fourier_regularized_limit(p, xi, t0).value;
              rows.push_back(make_row("lemma_family", d, hbar, lam, index, lhs, fockmap::fourier_closed_form(p, xi, t0), tol_family));
            } catch (const std::exception& e) {
              rows.push_back(error_row("lemma_family", d, hbar, lam, index, tol_family, e));
            }
          }
          return rows;
        });
      }
  return tasks;
}

std::vector<Task> scattering_tasks(const CampaignConfig& c) {
  std::vector<Task> tasks;
  const double tol_fh = c.tolerance("funk_hecke", 1e-6);
  const double tol_unit = c.tolerance("unitarity", 1e-12);
  const double tol_refl = c.tolerance("reflection", 1e-12);
  const double tol_pl = c.tolerance("plancherel_even", 1e-12);
  for (int d : c.dims)
    for (double lam : c.lambdas)
      tasks.push_back([=] {
        std::vector<CampaignRow> rows;
        for (int l = 0; l <= c.l_max; ++l) {
          const std::string index = "l=" + std::to_string(l);
          const cplx s = scattering::s_eigenvalue(lam, d, l);
          try {
            rows.push_back(make_row("funk_hecke", d, 1.0, lam, index, scattering::funk_hecke_eigenvalue(lam, d, l), s, tol_fh));
          } catch (const std::exception& e) {
            rows.push_back(error_row("funk_hecke", d, 1.0, lam, index, tol_fh, e));
          }
          rows.push_back(make_row("unitarity", d, 1.0, lam, index, std::abs(s), 1.0, tol_unit));
          rows.push_back(make_row("reflection", d, 1.0, lam, index, s * scattering::s_eigenvalue(-lam, d, l), 1.0, tol_refl));
        }
        rows.push_back(make_row("plancherel_even", d, 1.0, lam, "-", scattering::plancherel_density(-lam, d),
                                scattering::plancherel_density(lam, d), tol_pl));
        return rows;
      });
  return tasks;
}

// ---------------------------------------------------------------------------

using kepler::Branch;
using kepler::PhasePoint;

const char* branch_name(Branch b) { return b == Branch::attractive ? "attractive" : "repulsive"; }
double branch_sign(Branch b) { return b == Branch::attractive ? 1.0 : -1.0; }

/// Random point with H = E on the given branch (|x| restricted so that the shell is nonempty).
PhasePoint random_on_shell(std::mt19937_64& g, int d, Branch b, double E) {
  // The repulsive shell only contains radii beyond 1/E.
  const double r_min = b == Branch::attractive ? 0.3 : 1.0 / E + 0.3;
  std::uniform_real_distribution<double> radius(r_min, r_min + 2.7);
  for (;;) {
    const double r = radius(g);
    const double k2 = 2.0 * (E + branch_sign(b) / r);
    if (k2 <= 1e-2) continue;
    return PhasePoint{scaled(random_direction(g, d), r), scaled(random_direction(g, d), std::sqrt(k2))};
  }
}

PhasePoint random_phase_point(std::mt19937_64& g, int d) {
  std::uniform_real_distribution<double> radius(0.3, 3.0);
  return PhasePoint{scaled(random_direction(g, d), radius(g)), scaled(random_direction(g, d), radius(g))};
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<Task> moser_tasks(const CampaignConfig& c) {
  std::vector<Task> tasks;
  const numerics::OdeSpec spec;
  const double tol_round = c.tolerance("moser_roundtrip", 1e-12);
  const double tol_shell = c.tolerance("on_shell", 1e-10);
  const double tol_sym = c.tolerance("symplectic", 1e-6);
  const double tol_order = c.tolerance("symplectic_order", 0.1);
  const double tol_drift = c.tolerance("conserved_drift", 50.0 * spec.rel_tol);
  const double tol_rl = c.tolerance("runge_lenz", 1e-9);
  const double tol_period = c.tolerance("period", 1e-6);
  const double tol_corr = c.tolerance("correspondence", 1e-6);
  const double tol_scale = c.tolerance("time_scaling", 1e-8);
  const double tol_circle = c.tolerance("momentum_circle", 1e-9);
  const double tol_collision = c.tolerance("collision_energy", 1e-6);
  const double tol_geo = c.tolerance("geodesic_distance", 1e-9);
  const std::vector<double> energies{0.5, 2.0};

  for (int d : c.dims) {
    // Roundtrip, on-shell equivalence and the Runge–Lenz identity on random points.
    tasks.push_back([=] {
      std::vector<CampaignRow> rows;
      auto g = engine(c.seed, "moser_points", d, 0.0);
      std::uniform_real_distribution<double> energy(0.1, 3.0);
      double round = 0.0, shell = 0.0, rl = 0.0, off_shell_gap = std::numeric_limits<double>::infinity();
      for (int k = 0; k < c.random_points; ++k) {
        const double E = energy(g);
        const PhasePoint q = random_phase_point(g, d);
        const PhasePoint back = kepler::moser_inverse(E, kepler::moser_map(E, q));
        round = std::max(round, std::max(max_diff(back.x, q.x), max_diff(back.xi, q.xi)) /
                                    std::max(1.0, std::max(waves::norm(q.x), waves::norm(q.xi))));
        for (Branch b : {Branch::attractive, Branch::repulsive}) {
          const PhasePoint on = random_on_shell(g, d, b, E);
          shell = std::max(shell, std::abs(kepler::covector_norm(kepler::moser_map(E, on)) - 1.0));
          const auto cs = kepler::conserved_quantities(b, on);
          const double L2 = cs.L_norm() * cs.L_norm();
          rl = std::max(rl, std::abs(cs.R_norm() * cs.R_norm() - (1.0 + 2.0 * E * L2)) / (1.0 + 2.0 * E * L2));
          // Off the shell the image covector is not a unit covector.
          PhasePoint off = on;
          off.xi = scaled(off.xi, 1.1);
          off_shell_gap = std::min(off_shell_gap, std::abs(kepler::covector_norm(kepler::moser_map(E, off)) - 1.0));
        }
      }
      const std::string n = "points=" + std::to_string(c.random_points);
      rows.push_back(make_abs_row("moser_roundtrip", d, 1.0, 0.0, n, round, tol_round));
      rows.push_back(make_abs_row("on_shell", d, 1.0, 0.0, n, shell, tol_shell));
      // Recorded as 1/gap so that "error <= tolerance" reads as "the gap is at least 1/tolerance".
      rows.push_back(make_abs_row("off_shell", d, 1.0, 0.0, n, 1.0 / off_shell_gap, c.tolerance("off_shell", 1e3)));
      rows.push_back(make_abs_row("runge_lenz", d, 1.0, 0.0, n, rl, tol_rl));
      return rows;
    });

    // Symplectic pullback at h = 1e-4, and order-2 convergence from h = 1e-3 to 5e-4.
    tasks.push_back([=] {
      std::vector<CampaignRow> rows;
      auto g = engine(c.seed, "symplectic", d, 0.0);
      for (int k = 0; k < 3; ++k) {
        const double E = energies[k % energies.size()];
        const PhasePoint q = random_phase_point(g, d);
        const std::string index = "E=" + fmt(E) + ";x=" + fmt_point(q.x) + ";xi=" + fmt_point(q.xi);
        try {
          rows.push_back(make_abs_row("symplectic", d, 1.0, 0.0, index, kepler::symplectic_pullback_check(E, q, 1e-4), tol_sym));
          const double coarse = kepler::symplectic_pullback_check(E, q, 1e-3);
          const double fine = kepler::symplectic_pullback_check(E, q, 5e-4);
          rows.push_back(make_row("symplectic_order", d, 1.0, 0.0, index, coarse / fine, 4.0, tol_order));
        } catch (const std::exception& e) {
          rows.push_back(error_row("symplectic", d, 1.0, 0.0, index, tol_sym, e));
        }
      }
      return rows;
    });

    // Flow/cogeodesic correspondence over s in [0, 5].
    for (Branch b : {Branch::attractive, Branch::repulsive})
      for (double E : energies)
        tasks.push_back([=] {
          auto g = engine(c.seed, std::string("correspondence_") + branch_name(b), d, E);
          const PhasePoint q = random_on_shell(g, d, b, E);
          const std::string index = std::string(branch_name(b)) + ";E=" + fmt(E);
          try {
            const auto rep = kepler::flow_correspondence_check(b, E, q, 5.0, 51, spec);
            return std::vector<CampaignRow>{make_abs_row("correspondence", d, 1.0, 0.0, index, rep.max_deviation, tol_corr)};
          } catch (const std::exception& e) {
            return std::vector<CampaignRow>{error_row("correspondence", d, 1.0, 0.0, index, tol_corr, e)};
          }
        });
  }

  // Orbit-level checks in the plane (they embed trivially in higher d).
  tasks.push_back([=] {
    std::vector<CampaignRow> rows;
    const double two_pi = 2.0 * M_PI;
    try {
      rows.push_back(make_row("period", 2, 1.0, 0.0, "circular E=-1/2",
                              kepler::kepler_period(PhasePoint{{1.0, 0.0}, {0.0, 1.0}}, spec), two_pi, tol_period));
    } catch (const std::exception& e) {
      rows.push_back(error_row("period", 2, 1.0, 0.0, "circular E=-1/2", tol_period, e));
    }
    std::vector<double> times;
    for (int i = 0; i <= 200; ++i) times.push_back(0.1 * i);
    const std::vector<std::pair<Branch, PhasePoint>> orbits{
        {Branch::attractive, PhasePoint{{1.0, 0.0}, {0.0, 1.0}}},                            // circular
        {Branch::attractive, PhasePoint{{1.0, 0.0}, {0.2, 1.2}}},                            // elliptic
        {Branch::attractive, PhasePoint{{1.0, 0.0}, {0.3, std::sqrt(4.0 - 0.09)}}},          // hyperbolic, E = 1
        {Branch::repulsive, PhasePoint{{-3.0, 1.0}, {1.5, 0.0}}}};
    for (const auto& [b, p] : orbits) {
      const double E = kepler::hamiltonian(b, p);
      const std::string index = std::string(branch_name(b)) + ";E=" + fmt(E);
      try {
        const auto traj = kepler::kepler_flow(b, p, 20.0, spec, times);
        rows.push_back(make_abs_row("conserved_drift", 2, 1.0, 0.0, index, kepler::conserved_drift(b, traj), tol_drift));
        if (b == Branch::attractive) {
          // The hodograph is a circle of radius 1/|L| centred at distance |R|/|L|.
          const auto fit = kepler::momentum_circle_fit(traj);
          const auto cs = kepler::conserved_quantities(b, p);
          rows.push_back(make_row("momentum_circle", 2, 1.0, 0.0, index + ";radius", fit.radius, 1.0 / cs.L_norm(), tol_circle));
          rows.push_back(make_row("momentum_circle", 2, 1.0, 0.0, index + ";center",
                                  waves::norm(fit.center), cs.R_norm() / cs.L_norm(), tol_circle));
        }
      } catch (const std::exception& e) {
        rows.push_back(error_row("conserved_drift", 2, 1.0, 0.0, index, tol_drift, e));
      }
    }
    // Radial collision orbit: energy across the reflections.
    const PhasePoint radial{{1.0, 0.0}, {-0.2, 0.0}};
    try {
      const auto traj = kepler::kepler_flow(Branch::attractive, radial, 3.0, spec);
      const double E0 = kepler::hamiltonian(Branch::attractive, radial);
      double worst = 0.0;
      int events = 0;
      for (std::size_t i = 0; i < traj.size(); ++i) {
        worst = std::max(worst, std::abs(kepler::hamiltonian(Branch::attractive, kepler::phase_point_from_state(traj.states[i])) - E0));
        if (traj.event_flags[i] == numerics::EventFlag::collision_reflection) ++events;
      }
      rows.push_back(make_abs_row("collision_energy", 2, 1.0, 0.0, "radial;events=" + std::to_string(events),
                                  worst / std::abs(E0), tol_collision));
    } catch (const std::exception& e) {
      rows.push_back(error_row("collision_energy", 2, 1.0, 0.0, "radial", tol_collision, e));
    }
    return rows;
  });

  // Time scaling t_E(s) p0^3 = t_{1/2}(s) and the arc-length parametrization.
  tasks.push_back([=] {
    std::vector<CampaignRow> rows;
    const auto q0 = kepler::moser_map(0.5, PhasePoint{{0.0, 1.0}, {std::sqrt(3.0), 0.0}});
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(0.5 * i);
    try {
      const auto t_half = kepler::kepler_time_along_geodesic(Branch::attractive, 0.5, q0, grid, spec);
      for (double E : {2.0, 4.5}) {
        const double p0 = std::sqrt(2.0 * E);
        const auto tE = kepler::kepler_time_along_geodesic(Branch::attractive, E, q0, grid, spec);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(tE[i] * p0 * p0 * p0 - t_half[i]) / t_half[i]);
        rows.push_back(make_abs_row("time_scaling", 2, 1.0, 0.0, "E=" + fmt(E), worst, tol_scale));
      }
      for (double s : {1.0, 2.0, -1.5}) {
        const auto q = kepler::geodesic_flow(q0, s, spec);
        rows.push_back(make_row("geodesic_distance", 2, 1.0, 0.0, "s=" + fmt(s), kepler::hyperbolic_distance(q0.u, q.u),
                                std::abs(s), tol_geo));
        rows.push_back(make_row("unit_speed", 2, 1.0, 0.0, "s=" + fmt(s), kepler::covector_norm(q), 1.0, tol_geo));
      }
    } catch (const std::exception& e) {
      rows.push_back(error_row("time_scaling", 2, 1.0, 0.0, "-", tol_scale, e));
    }
    return rows;
  });
  return tasks;
}

// ---------------------------------------------------------------------------

std::vector<Task> inversion_tasks(const CampaignConfig& c) {
  std::vector<Task> tasks;
  const double tol_sym = c.tolerance("inversion_symmetry", 1e-12);
  const double tol_branch = c.tolerance("branch_factor", 1e-12);
  const double tol_inv = c.tolerance("inverse_partial_wave", 1e-4);
  const double tol_sch = c.tolerance("schwinger", 1e-4);
  for (int d : c.dims)
    for (double hbar : c.hbars)
      for (double lam : c.lambdas) {
        tasks.push_back([=] {
          std::vector<CampaignRow> rows;
          const SpectralParams p(d, hbar, lam);
          auto g = engine(c.seed, "inversion_symmetry", d, lam);
          std::uniform_real_distribution<double> radius(0.05, 0.95);
          const SphereDirection t0(random_direction(g, d));
          for (int k = 0; k < c.random_points; ++k) {
            const Point xi = scaled(random_direction(g, d), radius(g));
            const auto chk = fockmap::inversion_symmetry_check(p, xi, t0);
            rows.push_back(make_row("inversion_symmetry", d, hbar, lam, "xi=" + fmt_point(xi), chk.lhs, chk.rhs, tol_sym));
          }
          rows.push_back(make_row("branch_factor", d, hbar, lam, "-", fockmap::interior_branch_factor(lam),
                                  -std::exp(M_PI * std::abs(lam)), tol_branch));
          return rows;
        });
      }
  // The inverse radial transform is expensive: one representative per dimension.
  for (int d : c.dims) {
    const double hbar = c.hbars.front();
    const double lam = c.lambdas.front();
    const int l = d == 2 ? 0 : 1;
    tasks.push_back([=] {
      const SpectralParams p(d, hbar, lam);
      const std::string index = "l=" + std::to_string(l) + ";r=2";
      try {
        return std::vector<CampaignRow>{make_row("inverse_partial_wave", d, hbar, lam, index,
                                                 fockmap::fock_map_inverse_partial_wave(p, l, 2.0),
                                                 waves::coulomb_partial_wave(p, l, 2.0), tol_inv)};
      } catch (const std::exception& e) {
        return std::vector<CampaignRow>{error_row("inverse_partial_wave", d, hbar, lam, index, tol_inv, e)};
      }
    });
    tasks.push_back([=] {
      const SpectralParams p(d, hbar, lam);
      const auto f = waves::BoundaryData::mode(d, 1, 0, 0);
      Point x(d, 0.0);
      x[0] = 2.0;
      const std::string index = "Y_0;x=" + fmt_point(x);
      try {
        const cplx lhs = fockmap::schwinger_poisson(p, f, x);
        const cplx rhs = waves::poisson_synthesize(waves::WaveKind::coulomb, p, f, {x}).values.front();
        return std::vector<CampaignRow>{make_row("schwinger", d, hbar, lam, index, lhs, rhs, tol_sch)};
      } catch (const std::exception& e) {
        return std::vector<CampaignRow>{error_row("schwinger", d, hbar, lam, index, tol_sch, e)};
      }
    });
  }
  return tasks;
}

std::vector<Task> figure_tasks(const CampaignConfig& c) {
  std::vector<Task> tasks;
  const double tol = c.tolerance("figure_value", 1e-12);
  for (const std::string& name : figure_names())
    tasks.push_back([=] {
      std::vector<CampaignRow> rows;
      const std::filesystem::path path = std::filesystem::path(c.output_dir) / ("figure_" + name + ".csv");
      std::ofstream out(path);
      if (!out) throw ConfigError("cannot write " + path.string());
      write_figure(name, default_grid(name), out);
      out.close();
      if (name == "ppw_euclidean" || name == "ppw_coulomb" || name == "ppw_hyperbolic")
        rows.push_back(make_row("figure_value", 2, 1.0, 1.0, name + ";origin", figure_value(name, 0.0, 0.0), 1.0, tol));
      if (name == "level_sets") {
        // Re-read the emitted contour and check H = 1/2 on every sample.
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        double worst = 0.0;
        int n = 0;
        while (std::getline(in, line)) {
          std::istringstream ls(line);
          std::string branch, xs, xis;
          std::getline(ls, branch, ',');
          std::getline(ls, xs, ',');
          std::getline(ls, xis, ',');
          const Branch b = branch == "attractive" ? Branch::attractive : Branch::repulsive;
          worst = std::max(worst, std::abs(kepler::hamiltonian(b, PhasePoint{{std::stod(xs)}, {std::stod(xis)}}) - 0.5));
          ++n;
        }
        rows.push_back(make_abs_row("level_set", 1, 1.0, 0.0, "samples=" + std::to_string(n), worst, c.tolerance("level_set", 1e-12)));
      }
      return rows;
    });
  return tasks;
}

}  // namespace

std::size_t CampaignResult::passed() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CampaignRow& r) { return r.pass(); }));
}

std::size_t CampaignResult::failed() const { return rows.size() - passed(); }

double CampaignResult::max_error(const std::string& test_id) const {
  double m = 0.0;
  for (const auto& r : rows)
    if (r.test_id == test_id) m = std::max(m, r.rel_error);
  return m;
}

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + config.output_dir + "': " + ec.message());

  std::vector<Task> tasks;
  switch (config.suite) {
    case Suite::theorem: tasks = theorem_tasks(config, false); break;
    case Suite::repulsive: tasks = theorem_tasks(config, true); break;
    case Suite::lemma: tasks = lemma_tasks(config); break;
    case Suite::scattering: tasks = scattering_tasks(config); break;
    case Suite::moser: tasks = moser_tasks(config); break;
    case Suite::inversion: tasks = inversion_tasks(config); break;
    case Suite::figures: tasks = figure_tasks(config); break;
  }
  CampaignResult result;
  result.suite = config.suite;
  result.rows = run_tasks(tasks);
  result.exit_code = result.failed() == 0 ? 0 : 1;

  const std::filesystem::path dir(config.output_dir);
  const std::string name = to_string(config.suite);
  std::ofstream csv_out(dir / (name + ".csv"));
  std::ofstream summary_out(dir / (name + "_summary.txt"));
  if (!csv_out || !summary_out) throw ConfigError("cannot write reports into '" + config.output_dir + "'");
  write_campaign_csv(result, csv_out);
  write_campaign_summary(result, summary_out);
  return result;
}

void write_campaign_csv(const CampaignResult& result, std::ostream& out) {
  csv::write_row(out, {"test_id", "d", "hbar", "lambda", "index", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_error",
                       "tolerance", "pass"});
  for (const auto& r : result.rows)
    csv::write_row(out, {r.test_id, csv::num(r.d), csv::num(r.hbar), csv::num(r.lambda), r.index, csv::num(r.lhs.real()),
                         csv::num(r.lhs.imag()), csv::num(r.rhs.real()), csv::num(r.rhs.imag()), csv::num(r.rel_error),
                         csv::num(r.tolerance), r.pass() ? "1" : "0"});
}

void write_campaign_summary(const CampaignResult& result, std::ostream& out) {
  out << "suite " << to_string(result.suite) << "\n";
  out << "rows " << result.rows.size() << "\n";
  out << "passed " << result.passed() << "\n";
  out << "failed " << result.failed() << "\n";
  std::map<std::string, std::pair<double, double>> worst;  // id -> (max error, tolerance at that row)
  std::vector<std::string> order;
  for (const auto& r : result.rows) {
    auto it = worst.find(r.test_id);
    if (it == worst.end()) {
      order.push_back(r.test_id);
      worst[r.test_id] = {r.rel_error, r.tolerance};
    } else if (r.rel_error > it->second.first) {
      it->second = {r.rel_error, r.tolerance};
    }
  }
  for (const auto& id : order)
    out << "max_error " << id << " " << csv::num(worst[id].first) << " tolerance " << csv::num(worst[id].second) << "\n";
  for (const auto& r : result.rows)
    if (!r.pass())
      out << "FAIL " << r.test_id << " d=" << r.d << " hbar=" << csv::num(r.hbar) << " lambda=" << csv::num(r.lambda)
          << " " << r.index << " rel_error=" << csv::num(r.rel_error) << " tolerance=" << csv::num(r.tolerance) << "\n";
}

}  // namespace fock::cli
