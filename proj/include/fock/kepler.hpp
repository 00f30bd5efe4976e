// Classical Kepler problem at positive energy: Hamiltonians, the Moser map onto the unit
// cotangent bundle of the two-sheeted hyperbolic space, the regularized flow with collision
// reflection, conserved quantities and the correspondence with the cogeodesic flow.
//
// Conventions. The hyperbolic space is {u in R^d : |u| != 0, 1} with the metric
// g = lambda(u)^2 |du|^2, lambda(u) = 2 / |1 - |u|^2| (the Poincaré ball inside the sphere,
// its inverted copy outside). A cotangent point is stored as (u, eta) with eta the vector
// printed by the Moser map; the canonical momentum is P = lambda(u) eta, so the metric norm of
// the covector is |P| / lambda(u) = |eta| and "unit covector" means |eta| = 1. With these
// coordinates the Moser map pulls back dU ^ dP to p0 dx ^ dxi.
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fock/numerics.hpp"

namespace fock::kepler {

using Vec = std::vector<double>;

enum class Branch { attractive, repulsive };  // H = |xi|^2/2 -/+ 1/|x|

struct PhasePoint {
  Vec x;
  Vec xi;
  std::size_t dim() const { return x.size(); }
};

struct HyperbolicCotangentPoint {
  Vec u;
  Vec eta;
  std::size_t dim() const { return u.size(); }
};

struct ConservedSet {
  double energy = 0.0;
  Vec L;  // wedge components x_i xi_j - x_j xi_i, i < j, in lexicographic order
  Vec R;  // Runge–Lenz vector
  double L_norm() const;
  double R_norm() const;
};

double hamiltonian(Branch branch, const PhasePoint& p);

/// M_E(x, xi) = (p0 xi/|xi|^2, (|p0^2 - |xi|^2| / (2|xi|^2)) (-x |xi|^2 + 2 xi (x.xi))), p0 = sqrt(2E).
HyperbolicCotangentPoint moser_map(double E, const PhasePoint& p);
/// M_E^{-1}(u, eta) = ((2 / (p0^2 |1-|u|^2|)) (-eta |u|^2 + 2u (u.eta)), p0 u/|u|^2).
PhasePoint moser_inverse(double E, const HyperbolicCotangentPoint& q);

/// lambda(u) = 2 / |1 - |u|^2|.
double conformal_factor(const Vec& u);
/// Metric norm of the covector, |P| / lambda(u) = |eta|.
double covector_norm(const HyperbolicCotangentPoint& q);
/// |u| in (0, 1) for the ball sheet, (1, inf) for the exterior sheet.
bool on_ball_sheet(const HyperbolicCotangentPoint& q);

/// max |J^T Omega J - scale Omega| for the central-difference Jacobian J of `map` at `point`.
double symplectic_deviation(const numerics::VectorMap& map, const Eigen::VectorXd& point, double h, double scale);
/// The same for (x, xi) -> (u, P) = (u, lambda(u) eta) under M_E, with scale p0.
double symplectic_pullback_check(double E, const PhasePoint& p, double h);

/// Radial fall time from |x| = r to the origin at energy E (attractive, zero angular momentum).
double radial_fall_time(double E, double r);

/// Integrates xdot = xi, xidot = -/+ x/|x|^3 on [0, T]. For the attractive branch a collision is
/// declared at |x| = spec.event_threshold: the momentum is reversed along the line and the clock
/// advances by twice the radial fall time, so the orbit returns along the same ray with the same
/// speed. Samples are taken at `output_times` (every accepted step when empty); states are
/// (x, xi) concatenated.
numerics::Trajectory kepler_flow(Branch branch, const PhasePoint& p0, double T, const numerics::OdeSpec& spec = {},
                                 const std::vector<double>& output_times = {});

PhasePoint phase_point_from_state(const numerics::State& y);

ConservedSet conserved_quantities(Branch branch, const PhasePoint& p);

/// Max over samples of |Q(t) - Q(0)| / max(1, |Q(0)|) for the energy and every L and R component.
double conserved_drift(Branch branch, const numerics::Trajectory& traj);

struct CircleFit {
  Vec center;
  double radius = 0.0;
  double residual = 0.0;  // rms of |xi - center| - radius
};

/// Least-squares circle through the momenta of the trajectory, in the orbital plane.
/// Throws std::domain_error for collision orbits (L = 0) and std::invalid_argument for fewer than 10 samples.
CircleFit momentum_circle_fit(const numerics::Trajectory& traj);

/// Period of a bound (E < 0) attractive orbit: time for the polar angle in the orbital plane to advance by 2 pi.
double kepler_period(const PhasePoint& p0, const numerics::OdeSpec& spec = {});

/// Cogeodesic flow by arc length s (s may be negative); unit speed is required on input.
HyperbolicCotangentPoint geodesic_flow(const HyperbolicCotangentPoint& q, double s, const numerics::OdeSpec& spec = {});

/// Geodesic distance (the metric above; points on the same sheet).
double hyperbolic_distance(const Vec& u, const Vec& v);

struct CorrespondenceReport {
  std::vector<double> s;       // arc-length grid
  std::vector<double> t;       // time change t(s)
  double max_deviation = 0.0;  // max |M_E(kepler(t(s))) - geodesic(s)| over the grid (u and eta components)
};

/// Integrates the geodesic of M_E(p0) together with dt/ds = 2|u|^2 / (p0^3 |1 - |u|^2|) and compares
/// with the Kepler flow sampled at t(s). On the exterior sheet the map reverses the covector
/// orientation, so the geodesic is started from -eta there.
CorrespondenceReport flow_correspondence_check(Branch branch, double E, const PhasePoint& p0, double s_max,
                                               int samples = 51, const numerics::OdeSpec& spec = {});

/// Time parameter of the Kepler orbit M_E^{-1}(geodesic) along the arc-length grid, integrating
/// dt/ds = |x(t(s))| / p0 together with the orbit.
std::vector<double> kepler_time_along_geodesic(Branch branch, double E, const HyperbolicCotangentPoint& q0,
                                               const std::vector<double>& s_grid, const numerics::OdeSpec& spec = {});

/// CSV with header t,x1..xd,xi1..xid,E,L,R.
void write_trajectory_csv(Branch branch, const numerics::Trajectory& traj, std::ostream& out);

}  // namespace fock::kepler
