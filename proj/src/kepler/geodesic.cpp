#include <cmath>
#include <stdexcept>

#include "fock/kepler.hpp"

namespace fock::kepler {

namespace {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Hamilton equations of G(u, P) = |P|^2 / (2 lambda(u)^2) in arc length (unit speed: |P| = lambda),
// optionally extended by the time change dt/ds = 2|u|^2 / (p0^3 |1 - |u|^2|).
numerics::VectorField geodesic_field(std::size_t d, double p0) {
  return [d, p0](double, const numerics::State& y) {
    numerics::State dy(y.size());
    double u2 = 0.0, P2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      u2 += y[i] * y[i];
      P2 += y[d + i] * y[d + i];
    }
    const double q = 1.0 - u2;
    const double lam = 2.0 / std::abs(q);
    const double grad_scale = 4.0 * (q > 0.0 ? 1.0 : -1.0) / (q * q);  // grad lambda = grad_scale u
    const double coef = P2 / (lam * lam * lam) * grad_scale;
    for (std::size_t i = 0; i < d; ++i) {
      dy[i] = y[d + i] / (lam * lam);
      dy[d + i] = coef * y[i];
    }
    if (y.size() > 2 * d) dy[2 * d] = 2.0 * u2 / (p0 * p0 * p0 * std::abs(q));
    return dy;
  };
}

// The punctures: u = 0 on the ball sheet and u = infinity (the inverted origin) outside.
numerics::CollisionEvent puncture_event(std::size_t d) {
  numerics::CollisionEvent ev;
  ev.distance = [d](const numerics::State& y) {
    double u2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) u2 += y[i] * y[i];
    const double r = std::sqrt(u2);
    return std::min(r, 1.0 / r);
  };
  ev.reflect = [](const numerics::State&) -> numerics::Reflection {
    throw std::domain_error("geodesic_flow: the geodesic reaches a puncture of the hyperbolic space");
  };
  return ev;
}

numerics::State geodesic_state(const HyperbolicCotangentPoint& q, double orientation) {
  const double lam = conformal_factor(q.u);
  numerics::State y(q.u);
  for (double e : q.eta) y.push_back(orientation * lam * e);
  return y;
}

HyperbolicCotangentPoint from_geodesic_state(const numerics::State& y, std::size_t d, double orientation) {
  HyperbolicCotangentPoint q;
  q.u.assign(y.begin(), y.begin() + d);
  const double lam = conformal_factor(q.u);
  for (std::size_t i = 0; i < d; ++i) q.eta.push_back(orientation * y[d + i] / lam);
  return q;
}

void check_unit(const HyperbolicCotangentPoint& q, const char* who) {
  if (q.u.empty() || q.u.size() != q.eta.size()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  const double u2 = dot(q.u, q.u);
  if (!(u2 > 0.0) || u2 == 1.0) throw std::domain_error(std::string(who) + ": |u| must avoid 0 and 1");
  if (std::abs(covector_norm(q) - 1.0) > 1e-9) throw std::invalid_argument(std::string(who) + ": covector is not unit");
}

}  // namespace

HyperbolicCotangentPoint geodesic_flow(const HyperbolicCotangentPoint& q, double s, const numerics::OdeSpec& spec) {
  check_unit(q, "geodesic_flow");
  if (s == 0.0) return q;
  const std::size_t d = q.dim();
  // Backward flow = forward flow of the reversed covector, reversed back.
  const double orientation = s > 0.0 ? 1.0 : -1.0;
  const numerics::Trajectory traj = numerics::ode_integrate(geodesic_field(d, 1.0), geodesic_state(q, orientation), 0.0,
                                                            std::abs(s), spec, puncture_event(d), {std::abs(s)});
  return from_geodesic_state(traj.states.back(), d, orientation);
}

double hyperbolic_distance(const Vec& u, const Vec& v) {
  if (u.size() != v.size() || u.empty()) throw std::invalid_argument("hyperbolic_distance: dimension mismatch");
  double u2 = dot(u, u), v2 = dot(v, v);
  if (u2 == 1.0 || v2 == 1.0 || u2 == 0.0 || v2 == 0.0) throw std::domain_error("hyperbolic_distance: |u| must avoid 0 and 1");
  if ((u2 < 1.0) != (v2 < 1.0)) throw std::invalid_argument("hyperbolic_distance: points lie on different sheets");
  Vec a = u, b = v;
  if (u2 > 1.0) {  // inversion is an isometry onto the ball
    for (double& x : a) x /= u2;
    for (double& x : b) x /= v2;
    u2 = 1.0 / u2;
    v2 = 1.0 / v2;
  }
  double diff2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff2 += (a[i] - b[i]) * (a[i] - b[i]);
  return std::acosh(1.0 + 2.0 * diff2 / ((1.0 - u2) * (1.0 - v2)));
}

CorrespondenceReport flow_correspondence_check(Branch branch, double E, const PhasePoint& p0, double s_max, int samples,
                                               const numerics::OdeSpec& spec) {
  if (!(s_max > 0.0)) throw std::invalid_argument("flow_correspondence_check: s_max must be positive");
  if (samples < 2) throw std::invalid_argument("flow_correspondence_check: need at least 2 samples");
  if (std::abs(hamiltonian(branch, p0) - E) > 1e-10 * std::max(1.0, E))
    throw std::invalid_argument("flow_correspondence_check: starting point is not on the energy surface");
  const double p0_scale = std::sqrt(2.0 * E);
  const HyperbolicCotangentPoint q0 = moser_map(E, p0);
  check_unit(q0, "flow_correspondence_check");
  const std::size_t d = q0.dim();
  const double orientation = on_ball_sheet(q0) ? 1.0 : -1.0;

  CorrespondenceReport rep;
  for (int k = 0; k < samples; ++k) rep.s.push_back(s_max * k / (samples - 1));
  numerics::State y0 = geodesic_state(q0, orientation);
  y0.push_back(0.0);
  const numerics::Trajectory geo =
      numerics::ode_integrate(geodesic_field(d, p0_scale), y0, 0.0, s_max, spec, puncture_event(d), rep.s);
  if (geo.size() != rep.s.size()) throw numerics::ConvergenceError("flow_correspondence_check: geodesic samples missing");
  for (const auto& y : geo.states) rep.t.push_back(y[2 * d]);

  const numerics::Trajectory kep = kepler_flow(branch, p0, rep.t.back(), spec, rep.t);
  if (kep.size() != rep.t.size()) throw numerics::ConvergenceError("flow_correspondence_check: orbit samples missing");
  for (std::size_t k = 0; k < rep.t.size(); ++k) {
    const HyperbolicCotangentPoint mapped = moser_map(E, phase_point_from_state(kep.states[k]));
    const HyperbolicCotangentPoint g = from_geodesic_state(geo.states[k], d, orientation);
    for (std::size_t i = 0; i < d; ++i) {
      rep.max_deviation = std::max(rep.max_deviation, std::abs(mapped.u[i] - g.u[i]));
      rep.max_deviation = std::max(rep.max_deviation, std::abs(mapped.eta[i] - g.eta[i]));
    }
  }
  return rep;
}

std::vector<double> kepler_time_along_geodesic(Branch branch, double E, const HyperbolicCotangentPoint& q0,
                                               const std::vector<double>& s_grid, const numerics::OdeSpec& spec) {
  if (s_grid.empty()) throw std::invalid_argument("kepler_time_along_geodesic: empty grid");
  const double p0 = std::sqrt(2.0 * E);
  const PhasePoint start = moser_inverse(E, q0);
  const std::size_t d = start.dim();
  const double s = branch == Branch::attractive ? 1.0 : -1.0;
  // d/ds (x, xi, t) = (|x|/p0) (xi, -/+ x/|x|^3, 1)
  auto field = [d, s, p0](double, const numerics::State& y) {
    numerics::State dy(y.size());
    double r2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) r2 += y[i] * y[i];
    const double r = std::sqrt(r2);
    const double g = r / p0;
    for (std::size_t i = 0; i < d; ++i) {
      dy[i] = g * y[d + i];
      dy[d + i] = -g * s * y[i] / (r2 * r);
    }
    dy[2 * d] = g;
    return dy;
  };
  numerics::State y0(start.x);
  y0.insert(y0.end(), start.xi.begin(), start.xi.end());
  y0.push_back(0.0);
  std::vector<double> grid = s_grid;
  const double s_end = grid.back();
  if (!(s_end > 0.0)) throw std::invalid_argument("kepler_time_along_geodesic: grid must end at s > 0");
  const numerics::Trajectory traj = numerics::ode_integrate(field, y0, 0.0, s_end, spec, std::nullopt, grid);
  std::vector<double> out;
  for (const auto& y : traj.states) out.push_back(y[2 * d]);
  return out;
}

}  // namespace fock::kepler
