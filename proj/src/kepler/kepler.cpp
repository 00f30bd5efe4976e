#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fock/csv.hpp"
#include "fock/kepler.hpp"

namespace fock::kepler {

namespace {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

void check_point(const PhasePoint& p, const char* who) {
  if (p.x.empty() || p.x.size() != p.xi.size())
    throw std::invalid_argument(std::string(who) + ": x and xi must have the same nonzero dimension");
}

double momentum_scale(double E, const char* who) {
  if (!(E > 0.0) || !std::isfinite(E)) throw std::domain_error(std::string(who) + ": energy must be positive");
  return std::sqrt(2.0 * E);
}

double sign_of(Branch b) { return b == Branch::attractive ? 1.0 : -1.0; }

// Orthonormal basis (e1, e2) of the orbital plane spanned by x and xi.
std::pair<Vec, Vec> orbital_plane(const PhasePoint& p) {
  const double rx = norm(p.x);
  if (!(rx > 0.0)) throw std::domain_error("orbital_plane: x = 0");
  Vec e1(p.x.size()), e2(p.x.size());
  for (std::size_t i = 0; i < e1.size(); ++i) e1[i] = p.x[i] / rx;
  const double c = dot(p.xi, e1);
  for (std::size_t i = 0; i < e2.size(); ++i) e2[i] = p.xi[i] - c * e1[i];
  const double n2 = norm(e2);
  if (!(n2 > 1e-14 * std::max(1.0, norm(p.xi)))) throw std::domain_error("orbital_plane: collision orbit (L = 0)");
  for (double& v : e2) v /= n2;
  return {e1, e2};
}

}  // namespace

double ConservedSet::L_norm() const { return norm(L); }
double ConservedSet::R_norm() const { return norm(R); }

double hamiltonian(Branch branch, const PhasePoint& p) {
  check_point(p, "hamiltonian");
  const double r = norm(p.x);
  if (!(r > 0.0)) throw std::domain_error("hamiltonian: x = 0");
  return 0.5 * dot(p.xi, p.xi) - sign_of(branch) / r;
}

HyperbolicCotangentPoint moser_map(double E, const PhasePoint& p) {
  check_point(p, "moser_map");
  const double p0 = momentum_scale(E, "moser_map");
  const double n2 = dot(p.xi, p.xi);
  if (!(n2 > 0.0)) throw std::domain_error("moser_map: xi = 0");
  if (n2 == p0 * p0) throw std::domain_error("moser_map: |xi| = p0");
  const double xx = dot(p.x, p.xi);
  const double f = std::abs(p0 * p0 - n2) / (2.0 * n2);
  HyperbolicCotangentPoint q;
  q.u.resize(p.dim());
  q.eta.resize(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    q.u[i] = p0 * p.xi[i] / n2;
    q.eta[i] = f * (-p.x[i] * n2 + 2.0 * p.xi[i] * xx);
  }
  return q;
}

PhasePoint moser_inverse(double E, const HyperbolicCotangentPoint& q) {
  if (q.u.empty() || q.u.size() != q.eta.size()) throw std::invalid_argument("moser_inverse: dimension mismatch");
  const double p0 = momentum_scale(E, "moser_inverse");
  const double u2 = dot(q.u, q.u);
  if (!(u2 > 0.0) || u2 == 1.0) throw std::domain_error("moser_inverse: |u| must avoid 0 and 1");
  const double ue = dot(q.u, q.eta);
  const double f = 2.0 / (p0 * p0 * std::abs(1.0 - u2));
  PhasePoint p;
  p.x.resize(q.dim());
  p.xi.resize(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    p.x[i] = f * (-q.eta[i] * u2 + 2.0 * q.u[i] * ue);
    p.xi[i] = p0 * q.u[i] / u2;
  }
  return p;
}

double conformal_factor(const Vec& u) {
  const double u2 = dot(u, u);
  if (u2 == 1.0) throw std::domain_error("conformal_factor: |u| = 1");
  return 2.0 / std::abs(1.0 - u2);
}

double covector_norm(const HyperbolicCotangentPoint& q) { return norm(q.eta); }

bool on_ball_sheet(const HyperbolicCotangentPoint& q) { return dot(q.u, q.u) < 1.0; }

double symplectic_deviation(const numerics::VectorMap& map, const Eigen::VectorXd& point, double h, double scale) {
  const Eigen::Index n2 = point.size();
  if (n2 % 2 != 0) throw std::invalid_argument("symplectic_deviation: phase space dimension must be even");
  const Eigen::Index n = n2 / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n2, n2);
  omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd J = numerics::finite_difference_jacobian(map, point, h);
  return (J.transpose() * omega * J - scale * omega).cwiseAbs().maxCoeff();
}

double symplectic_pullback_check(double E, const PhasePoint& p, double h) {
  check_point(p, "symplectic_pullback_check");
  const double p0 = momentum_scale(E, "symplectic_pullback_check");
  const std::size_t d = p.dim();
  auto map = [E, d](const Eigen::VectorXd& z) {
    PhasePoint q{Vec(z.data(), z.data() + d), Vec(z.data() + d, z.data() + 2 * d)};
    const HyperbolicCotangentPoint m = moser_map(E, q);
    const double lam = conformal_factor(m.u);
    Eigen::VectorXd out(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = m.u[i];
      out[d + i] = lam * m.eta[i];
    }
    return out;
  };
  Eigen::VectorXd z(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    z[i] = p.x[i];
    z[d + i] = p.xi[i];
  }
  return symplectic_deviation(map, z, h, p0);
}

double radial_fall_time(double E, double r) {
  if (!(r > 0.0)) throw std::domain_error("radial_fall_time: r must be positive");
  if (!(E * r + 1.0 > 0.0)) throw std::domain_error("radial_fall_time: turning point below r");
  // \int_0^r dr' / sqrt(2(E + 1/r')) with r' = w^2: \int_0^{sqrt r} 2 w^2 / sqrt(2(E w^2 + 1)) dw
  auto f = [E](double w) { return 2.0 * w * w / std::sqrt(2.0 * (E * w * w + 1.0)); };
  return numerics::integrate_panels(f, 0.0, std::sqrt(r), 4, 20);
}

PhasePoint phase_point_from_state(const numerics::State& y) {
  if (y.size() % 2 != 0 || y.empty()) throw std::invalid_argument("phase_point_from_state: odd state size");
  const std::size_t d = y.size() / 2;
  return PhasePoint{Vec(y.begin(), y.begin() + d), Vec(y.begin() + d, y.end())};
}

numerics::Trajectory kepler_flow(Branch branch, const PhasePoint& p0, double T, const numerics::OdeSpec& spec,
                                 const std::vector<double>& output_times) {
  check_point(p0, "kepler_flow");
  if (!(norm(p0.x) > spec.event_threshold)) throw std::domain_error("kepler_flow: initial point on the singularity");
  const std::size_t d = p0.dim();
  const double s = sign_of(branch);
  auto field = [d, s](double, const numerics::State& y) {
    numerics::State dy(2 * d);
    double r2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) r2 += y[i] * y[i];
    const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
    for (std::size_t i = 0; i < d; ++i) {
      dy[i] = y[d + i];
      dy[d + i] = -s * y[i] * inv_r3;
    }
    return dy;
  };
  numerics::State y0(p0.x);
  y0.insert(y0.end(), p0.xi.begin(), p0.xi.end());
  std::optional<numerics::CollisionEvent> event;
  if (branch == Branch::attractive) {
    numerics::CollisionEvent ev;
    ev.distance = [d](const numerics::State& y) { return std::sqrt(std::inner_product(y.begin(), y.begin() + d, y.begin(), 0.0)); };
    ev.reflect = [d](const numerics::State& y) {
      const PhasePoint p = phase_point_from_state(y);
      const double E = hamiltonian(Branch::attractive, p);
      numerics::Reflection out;
      out.state = y;
      for (std::size_t i = 0; i < d; ++i) out.state[d + i] = -y[d + i];
      out.time_advance = 2.0 * radial_fall_time(E, norm(p.x));
      return out;
    };
    event = ev;
  }
  return numerics::ode_integrate(field, y0, 0.0, T, spec, event, output_times);
}

ConservedSet conserved_quantities(Branch branch, const PhasePoint& p) {
  check_point(p, "conserved_quantities");
  ConservedSet c;
  c.energy = hamiltonian(branch, p);
  const std::size_t d = p.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) c.L.push_back(p.x[i] * p.xi[j] - p.x[j] * p.xi[i]);
  const double r = norm(p.x);
  const double n2 = dot(p.xi, p.xi);
  const double xx = dot(p.x, p.xi);
  const double radial = n2 - sign_of(branch) / r;
  c.R.resize(d);
  for (std::size_t i = 0; i < d; ++i) c.R[i] = radial * p.x[i] - xx * p.xi[i];
  return c;
}

double conserved_drift(Branch branch, const numerics::Trajectory& traj) {
  if (traj.size() == 0) return 0.0;
  const ConservedSet c0 = conserved_quantities(branch, phase_point_from_state(traj.states.front()));
  double worst = 0.0;
  auto upd = [&worst](double a, double b) { worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b))); };
  for (const auto& y : traj.states) {
    const ConservedSet c = conserved_quantities(branch, phase_point_from_state(y));
    upd(c.energy, c0.energy);
    for (std::size_t i = 0; i < c.L.size(); ++i) upd(c.L[i], c0.L[i]);
    for (std::size_t i = 0; i < c.R.size(); ++i) upd(c.R[i], c0.R[i]);
  }
  return worst;
}

CircleFit momentum_circle_fit(const numerics::Trajectory& traj) {
  if (traj.size() < 10) throw std::invalid_argument("momentum_circle_fit: need at least 10 samples");
  const PhasePoint first = phase_point_from_state(traj.states.front());
  const auto [e1, e2] = orbital_plane(first);
  const Eigen::Index n = static_cast<Eigen::Index>(traj.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd rhs(n);
  std::vector<std::pair<double, double>> pts;
  for (Eigen::Index k = 0; k < n; ++k) {
    const PhasePoint p = phase_point_from_state(traj.states[k]);
    const double a = dot(p.xi, e1), b = dot(p.xi, e2);
    pts.emplace_back(a, b);
    A(k, 0) = 2.0 * a;
    A(k, 1) = 2.0 * b;
    A(k, 2) = 1.0;
    rhs(k) = a * a + b * b;
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
  CircleFit fit;
  fit.radius = std::sqrt(sol(2) + sol(0) * sol(0) + sol(1) * sol(1));
  fit.center.resize(e1.size());
  for (std::size_t i = 0; i < e1.size(); ++i) fit.center[i] = sol(0) * e1[i] + sol(1) * e2[i];
  double ss = 0.0;
  for (const auto& [a, b] : pts) {
    const double dev = std::hypot(a - sol(0), b - sol(1)) - fit.radius;
    ss += dev * dev;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(pts.size()));
  return fit;
}

double kepler_period(const PhasePoint& p0, const numerics::OdeSpec& spec) {
  const double E = hamiltonian(Branch::attractive, p0);
  if (!(E < 0.0)) throw std::domain_error("kepler_period: orbit is not bound");
  const auto [e1, e2] = orbital_plane(p0);
  auto angle_of = [&](const numerics::State& y) {
    const PhasePoint p = phase_point_from_state(y);
    return std::atan2(dot(p.x, e2), dot(p.x, e1));
  };
  const double guess = 2.0 * M_PI / std::pow(-2.0 * E, 1.5);
  const numerics::Trajectory traj = kepler_flow(Branch::attractive, p0, 1.5 * guess, spec);
  // Unwrapped polar angle; the motion is counter-clockwise in (e1, e2) by construction of e2.
  double unwrapped = 0.0, prev = angle_of(traj.states.front());
  std::size_t k = 1;
  for (; k < traj.size(); ++k) {
    const double a = angle_of(traj.states[k]);
    double delta = a - prev;
    if (delta < -M_PI) delta += 2.0 * M_PI;
    if (delta > M_PI) delta -= 2.0 * M_PI;
    if (unwrapped + delta >= 2.0 * M_PI) break;
    unwrapped += delta;
    prev = a;
  }
  if (k == traj.size()) throw numerics::ConvergenceError("kepler_period: no full revolution found");
  // Secant refinement of angle(t) = 2 pi between samples k-1 and k.
  const double ta = traj.times[k - 1];
  const numerics::State ya = traj.states[k - 1];
  const double base = unwrapped;
  auto g = [&](double t) {
    if (t <= ta) return base - 2.0 * M_PI;
    const numerics::State y = kepler_flow(Branch::attractive, phase_point_from_state(ya), t - ta, spec).states.back();
    double delta = angle_of(y) - angle_of(ya);
    if (delta < -M_PI) delta += 2.0 * M_PI;
    if (delta > M_PI) delta -= 2.0 * M_PI;
    return base + delta - 2.0 * M_PI;
  };
  double t0 = ta, t1 = traj.times[k];
  double g0 = g(t0), g1 = g(t1);
  for (int it = 0; it < 50 && std::abs(t1 - t0) > 1e-14 * t1; ++it) {
    const double t2 = t1 - g1 * (t1 - t0) / (g1 - g0);
    t0 = t1;
    g0 = g1;
    t1 = t2;
    g1 = g(t1);
  }
  return t1;
}

void write_trajectory_csv(Branch branch, const numerics::Trajectory& traj, std::ostream& out) {
  if (traj.size() == 0) throw std::invalid_argument("write_trajectory_csv: empty trajectory");
  const std::size_t d = traj.states.front().size() / 2;
  std::vector<std::string> header{"t"};
  for (std::size_t i = 0; i < d; ++i) header.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < d; ++i) header.push_back("xi" + std::to_string(i + 1));
  header.insert(header.end(), {"E", "L", "R"});
  csv::write_row(out, header);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const ConservedSet c = conserved_quantities(branch, phase_point_from_state(traj.states[k]));
    std::vector<std::string> row{csv::num(traj.times[k])};
    for (double v : traj.states[k]) row.push_back(csv::num(v));
    row.insert(row.end(), {csv::num(c.energy), csv::num(c.L_norm()), csv::num(c.R_norm())});
    csv::write_row(out, row);
  }
}

}  // namespace fock::kepler
