// Shared quadrature, extrapolation, finite-difference and ODE machinery.
#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace fock::numerics {

using cplx = std::complex<double>;

/// Raised when an iterative/extrapolated quantity fails its own consistency check.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Gaussian quadrature
// ---------------------------------------------------------------------------

struct QuadratureRule {
  std::vector<double> nodes;    // ascending, inside (-1, 1)
  std::vector<double> weights;  // positive
};

/// n-point Gauss–Legendre rule on [-1, 1]; exact for degree <= 2n-1.
QuadratureRule gauss_legendre(int n);

/// Same rule, memoized (thread-safe). Prefer this in hot loops.
const QuadratureRule& gauss_legendre_cached(int n);

/// n-point Gauss–Jacobi rule for the weight (1-t)^alpha (1+t)^beta on [-1, 1].
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

/// Integrate f over [a, b] with `panels` equal Gauss–Legendre panels of n nodes.
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, int n) -> decltype(f(a)) {
  const QuadratureRule& q = gauss_legendre_cached(n);
  using R = decltype(f(a));
  R sum{};
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * w;
    R part{};
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      part += q.weights[i] * f(lo + 0.5 * w * (q.nodes[i] + 1.0));
    }
    sum += part * (0.5 * w);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Damped oscillatory integrals and Richardson extrapolation
// ---------------------------------------------------------------------------

struct QuadratureSpec {
  int node_count = 16;          // Gauss–Legendre nodes per panel
  double jacobi_alpha = 0.0;    // endpoint exponents for Jacobi-weighted rules
  double jacobi_beta = 0.0;
  std::vector<double> damping_ladder{0.2, 0.1, 0.05, 0.025, 0.0125};
  int extrapolation_order = 3;
  double panel_width = 1.0;     // radial panel width (choose below the oscillation period)
  double tolerance = 1e-4;      // non-convergence when the extrapolant spread exceeds 10x this
  double tail_tolerance = 1e-16;  // damped integrals are truncated where exp(-eps r) drops below this
  bool even_in_epsilon = false;   // extrapolate in eps^2 instead of eps

  /// Throws std::invalid_argument when the invariants are violated.
  void validate() const;
};

struct Extrapolated {
  cplx value;
  double error_estimate = 0.0;
};

/// Polynomial extrapolation to eps = 0 through the `order`+1 samples with the
/// smallest eps. The error estimate is the change from the order-1 extrapolant.
Extrapolated richardson_extrapolate(const std::vector<std::pair<double, cplx>>& samples, int order,
                                    bool even_in_epsilon = false);

using RadialIntegrand = std::function<cplx(double)>;

/// lim_{eps->0+} of \int_0^{r_max} f(r) e^{-eps r} dr.
/// For finite r_max the limit is the plain integral (dominated convergence) and is
/// computed directly; for r_max = +inf the damped integrals along the ladder are
/// extrapolated. Throws ConvergenceError when the error estimate exceeds
/// 10 * spec.tolerance.
Extrapolated integrate_damped_oscillatory(const RadialIntegrand& f, double r_max,
                                          const QuadratureSpec& spec);

/// Damped integrals I(eps_k) for every ladder entry, from a single pass over the nodes.
std::vector<std::pair<double, cplx>> damped_ladder_values(const RadialIntegrand& f,
                                                          const QuadratureSpec& spec,
                                                          double r_start = 0.0);

// ---------------------------------------------------------------------------
// ODE integration
// ---------------------------------------------------------------------------

using State = std::vector<double>;
using VectorField = std::function<State(double, const State&)>;

struct OdeSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double event_threshold = 1e-3;  // collision radius; near-collision energy error grows like rel_tol / radius

  void validate() const;
};

enum class EventFlag { none, collision_reflection };

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<EventFlag> event_flags;
  std::size_t size() const { return times.size(); }
};

struct Reflection {
  State state;              // post-event state
  double time_advance = 0;  // time elapsed inside the event neighbourhood (>= 0)
};

/// Collision event: fires when distance(y) drops to spec.event_threshold (located by bisection
/// to within 1e-3 of the threshold). After a reflection the event is re-armed only once the
/// state has left the event radius.
struct CollisionEvent {
  std::function<double(const State&)> distance;
  std::function<Reflection(const State&)> reflect;  // may be empty -> error on trigger
};

/// Dormand–Prince 5(4) integration from t0 to t1. When `output_times` is empty every
/// accepted step is recorded; otherwise samples are taken exactly at those times.
/// On a collision the pre-event state is recorded with EventFlag::collision_reflection
/// and integration resumes from the reflected state.
Trajectory ode_integrate(const VectorField& field, const State& y0, double t0, double t1,
                         const OdeSpec& spec, const std::optional<CollisionEvent>& event = std::nullopt,
                         const std::vector<double>& output_times = {});

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

using VectorMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Central-difference Jacobian (entrywise O(h^2)). A map that throws at a stencil
/// point propagates its exception.
Eigen::MatrixXd finite_difference_jacobian(const VectorMap& map, const Eigen::VectorXd& point, double h);

}  // namespace fock::numerics
