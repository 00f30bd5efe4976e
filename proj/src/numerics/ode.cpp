#include <algorithm>
#include <cmath>
#include <sstream>

#include "fock/numerics.hpp"

namespace fock::numerics {

void OdeSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("OdeSpec: rel_tol must lie in (0, 1)");
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) throw std::invalid_argument("OdeSpec: abs_tol must lie in (0, 1)");
  if (!(max_step > 0.0)) throw std::invalid_argument("OdeSpec: max_step must be positive");
  if (!(event_threshold > 0.0)) throw std::invalid_argument("OdeSpec: event_threshold must be positive");
}

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
  State y;
  double err_norm;
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

StepResult dp_step(const VectorField& f, double t, const State& y, double h, const OdeSpec& spec) {
  const State k1 = f(t, y);
  const State k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
  const State k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
  const State k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const State k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const State k6 = f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
  State y1 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  const State k7 = f(t + h, y1);
  double err = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double sc = spec.abs_tol + spec.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
    err = std::max(err, std::abs(ei) / sc);
  }
  return {std::move(y1), err};
}

void check_finite(const State& y) {
  for (double v : y) {
    if (!std::isfinite(v)) throw ConvergenceError("ode_integrate: non-finite state");
  }
}

}  // namespace

Trajectory ode_integrate(const VectorField& field, const State& y0, double t0, double t1, const OdeSpec& spec,
                         const std::optional<CollisionEvent>& event, const std::vector<double>& output_times) {
  spec.validate();
  if (!(t1 > t0)) throw std::invalid_argument("ode_integrate: t1 must exceed t0");
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    if (output_times[i] < t0 || output_times[i] > t1 || (i > 0 && !(output_times[i] > output_times[i - 1])))
      throw std::invalid_argument("ode_integrate: output times must be increasing within [t0, t1]");
  }

  Trajectory traj;
  auto record = [&](double t, const State& y, EventFlag flag) {
    if (!traj.times.empty() && !(t > traj.times.back())) return;
    traj.times.push_back(t);
    traj.states.push_back(y);
    traj.event_flags.push_back(flag);
  };

  const bool dense_mode = output_times.empty();
  std::size_t next_out = 0;
  double t = t0;
  State y = y0;
  if (dense_mode) {
    record(t, y, EventFlag::none);
  } else {
    while (next_out < output_times.size() && output_times[next_out] <= t) record(output_times[next_out++], y, EventFlag::none);
  }

  // The event is armed only while the state is outside the event radius, so a reflected state
  // sitting on the radius cannot re-trigger before it has left it.
  bool armed = event && event->distance(y) > spec.event_threshold;

  double h = std::min(spec.max_step, 1e-3 * std::max(1.0, t1 - t0));
  const double h_floor = 1e-15;

  while (t < t1) {
    double t_target = t1;
    if (!dense_mode && next_out < output_times.size()) t_target = std::min(t_target, output_times[next_out]);
    double h_try = std::min({h, spec.max_step, t_target - t});
    bool clipped = (h_try == t_target - t);

    StepResult st = dp_step(field, t, y, h_try, spec);
    if (!(st.err_norm <= 1.0) || !std::isfinite(st.err_norm)) {
      const double fac = std::isfinite(st.err_norm) ? std::max(0.1, 0.9 * std::pow(st.err_norm, -0.2)) : 0.1;
      h = h_try * fac;
      if (h < h_floor * std::max(1.0, std::abs(t))) {
        std::ostringstream msg;
        msg << "ode_integrate: step-size underflow at t=" << t;
        throw ConvergenceError(msg.str());
      }
      continue;
    }

    // Accepted step; look for a collision inside it.
    if (event && !armed && event->distance(st.y) > spec.event_threshold) armed = true;
    if (armed && event->distance(st.y) <= spec.event_threshold) {
      // Bisection on the step length, re-stepping from the start of the step.
      double lo = 0.0, hi = h_try;
      State y_hi = st.y;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(t)); ++it) {
        const double mid = 0.5 * (lo + hi);
        State ym = dp_step(field, t, y, mid, spec).y;
        const double dist = event->distance(ym);
        if (dist > spec.event_threshold) {
          lo = mid;
        } else {
          hi = mid;
          y_hi = ym;
        }
        if (std::abs(dist - spec.event_threshold) <= 1e-3 * spec.event_threshold) {
          y_hi = ym;
          hi = mid;
          break;
        }
      }
      if (!event->reflect) throw std::logic_error("ode_integrate: collision located but no reflection supplied");
      const double t_event = t + hi;
      if (!dense_mode) {
        // Output times falling inside the located step are filled by re-stepping.
        while (next_out < output_times.size() && output_times[next_out] <= t_event) {
          record(output_times[next_out], dp_step(field, t, y, output_times[next_out] - t, spec).y, EventFlag::none);
          ++next_out;
        }
      }
      const Reflection refl = event->reflect(y_hi);
      if (!(refl.time_advance >= 0.0)) throw std::logic_error("ode_integrate: negative reflection time advance");
      check_finite(refl.state);
      if (refl.time_advance > 0.0) {
        traj.times.push_back(t_event);
        traj.states.push_back(y_hi);
        traj.event_flags.push_back(EventFlag::collision_reflection);
        t = t_event + refl.time_advance;
        y = refl.state;
        if (dense_mode && t <= t1) record(t, y, EventFlag::none);
      } else {
        traj.times.push_back(t_event);
        traj.states.push_back(refl.state);
        traj.event_flags.push_back(EventFlag::collision_reflection);
        t = t_event;
        y = refl.state;
      }
      if (!dense_mode) {
        while (next_out < output_times.size() && output_times[next_out] <= t) ++next_out;  // skipped by the jump
      }
      armed = event->distance(y) > spec.event_threshold;
      h = std::max(h_try * 0.1, 1e-6);
      continue;
    }

    t = clipped ? t_target : t + h_try;
    y = std::move(st.y);
    check_finite(y);
    if (dense_mode) {
      record(t, y, EventFlag::none);
    } else if (next_out < output_times.size() && t >= output_times[next_out]) {
      record(output_times[next_out++], y, EventFlag::none);
    }
    const double fac = st.err_norm > 0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(st.err_norm, -0.2))) : 5.0;
    h = clipped ? std::max(h, h_try * fac) : h_try * fac;
  }
  return traj;
}

}  // namespace fock::numerics
