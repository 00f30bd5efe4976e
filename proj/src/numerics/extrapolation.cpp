#include <algorithm>
#include <cmath>
#include <sstream>

#include "fock/numerics.hpp"

namespace fock::numerics {

void QuadratureSpec::validate() const {
  if (node_count < 2) throw std::invalid_argument("QuadratureSpec: node_count must be >= 2");
  if (!(jacobi_alpha > -1.0) || !(jacobi_beta > -1.0))
    throw std::invalid_argument("QuadratureSpec: Jacobi exponents must exceed -1");
  if (damping_ladder.empty()) throw std::invalid_argument("QuadratureSpec: damping ladder is empty");
  for (std::size_t i = 0; i < damping_ladder.size(); ++i) {
    if (!(damping_ladder[i] > 0.0)) throw std::invalid_argument("QuadratureSpec: damping ladder must be positive");
    if (i > 0 && !(damping_ladder[i] < damping_ladder[i - 1]))
      throw std::invalid_argument("QuadratureSpec: damping ladder must be strictly decreasing");
  }
  if (extrapolation_order < 1 || extrapolation_order >= static_cast<int>(damping_ladder.size()))
    throw std::invalid_argument("QuadratureSpec: extrapolation_order must be in [1, ladder length)");
  if (!(panel_width > 0.0)) throw std::invalid_argument("QuadratureSpec: panel_width must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerance must be positive");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
    throw std::invalid_argument("QuadratureSpec: tail_tolerance must lie in (0, 1)");
}

namespace {

// Neville evaluation at 0 of the interpolating polynomial through (x_i, y_i).
cplx neville_at_zero(const std::vector<double>& x, const std::vector<cplx>& y) {
  std::vector<cplx> p = y;
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      // Difference form: constant data stay exactly constant.
      p[i] = p[i + 1] + (p[i] - p[i + 1]) * (x[i + m] / (x[i + m] - x[i]));
    }
  }
  return p[0];
}

}  // namespace

Extrapolated richardson_extrapolate(const std::vector<std::pair<double, cplx>>& samples, int order,
                                    bool even_in_epsilon) {
  if (order < 0) throw std::invalid_argument("richardson_extrapolate: negative order");
  if (static_cast<std::size_t>(order) >= samples.size())
    throw std::invalid_argument("richardson_extrapolate: order must be below the sample count");
  std::vector<std::pair<double, cplx>> s = samples;
  for (const auto& [e, v] : s) {
    if (!(e > 0.0)) throw std::invalid_argument("richardson_extrapolate: eps must be positive");
  }
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].first == s[i - 1].first) throw std::invalid_argument("richardson_extrapolate: repeated eps node");
  }

  auto extrapolate_tail = [&](std::size_t count) {
    std::vector<double> x;
    std::vector<cplx> y;
    for (std::size_t i = s.size() - count; i < s.size(); ++i) {
      const double e = s[i].first;
      x.push_back(even_in_epsilon ? e * e : e);
      y.push_back(s[i].second);
    }
    return neville_at_zero(x, y);
  };

  Extrapolated out;
  out.value = extrapolate_tail(order + 1);
  if (order >= 1) {
    out.error_estimate = std::abs(out.value - extrapolate_tail(order));
  } else if (s.size() >= 2) {
    out.error_estimate = std::abs(s.back().second - s[s.size() - 2].second);
  }
  return out;
}

std::vector<std::pair<double, cplx>> damped_ladder_values(const RadialIntegrand& f, const QuadratureSpec& spec,
                                                          double r_start) {
  spec.validate();
  const auto& ladder = spec.damping_ladder;
  const double cutoff = -std::log(spec.tail_tolerance);
  const double r_end = r_start + cutoff / ladder.back();
  const QuadratureRule& q = gauss_legendre_cached(spec.node_count);
  const double w = spec.panel_width;
  const auto panels = static_cast<long>(std::ceil((r_end - r_start) / w));

  std::vector<cplx> acc(ladder.size(), cplx{});
  for (long p = 0; p < panels; ++p) {
    const double lo = r_start + p * w;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double r = lo + 0.5 * w * (q.nodes[i] + 1.0);
      const cplx fr = f(r) * (0.5 * w * q.weights[i]);
      const double dr = r - r_start;
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        const double arg = ladder[k] * dr;
        if (arg > cutoff) continue;
        acc[k] += fr * std::exp(-arg);
      }
    }
  }
  std::vector<std::pair<double, cplx>> out;
  for (std::size_t k = 0; k < ladder.size(); ++k) out.emplace_back(ladder[k], acc[k]);
  return out;
}

Extrapolated integrate_damped_oscillatory(const RadialIntegrand& f, double r_max, const QuadratureSpec& spec) {
  spec.validate();
  if (!(r_max > 0.0)) throw std::invalid_argument("integrate_damped_oscillatory: r_max must be positive");

  Extrapolated out;
  if (std::isfinite(r_max)) {
    // Bounded interval: the eps -> 0 limit is the undamped integral itself.
    const auto panels = std::max<long>(1, static_cast<long>(std::ceil(r_max / spec.panel_width)));
    const cplx fine = integrate_panels(f, 0.0, r_max, static_cast<int>(2 * panels), spec.node_count);
    const cplx coarse = integrate_panels(f, 0.0, r_max, static_cast<int>(panels), spec.node_count);
    out.value = fine;
    out.error_estimate = std::abs(fine - coarse);
  } else {
    const auto samples = damped_ladder_values(f, spec);
    out = richardson_extrapolate(samples, spec.extrapolation_order, spec.even_in_epsilon);
  }
  if (out.error_estimate > 10.0 * spec.tolerance) {
    std::ostringstream msg;
    msg << "integrate_damped_oscillatory: extrapolants disagree by " << out.error_estimate
        << " (tolerance " << spec.tolerance << ")";
    throw ConvergenceError(msg.str());
  }
  return out;
}

}  // namespace fock::numerics
