#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fock/fockmap.hpp"
#include "fock/specfun.hpp"

namespace fock::fockmap {

namespace {

// Uniform table of T(s) = M(lambda i; 1/2; sigma i s), s in [0, s_max], with four-point
// Lagrange interpolation (error O(h^4) for the slowly varying factor).
class MTable {
 public:
  MTable(double lambda, double s_max, double step) : step_(step) {
    const double sigma = lambda > 0.0 ? 1.0 : -1.0;
    const std::size_t n = static_cast<std::size_t>(std::ceil(s_max / step)) + 4;
    values_.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      values_.push_back(specfun::olver_M(cplx(0.0, lambda), 0.5, cplx(0.0, sigma * step * static_cast<double>(k))));
  }

  cplx operator()(double s) const {
    const double t = s / step_;
    std::size_t k = static_cast<std::size_t>(t);
    k = std::clamp<std::size_t>(k, 1, values_.size() - 3);
    const double u = t - static_cast<double>(k);  // position relative to node k, nodes k-1..k+2
    const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return w0 * values_[k - 1] + w1 * values_[k] + w2 * values_[k + 1] + w3 * values_[k + 2];
  }

 private:
  double step_;
  std::vector<cplx> values_;
};

}  // namespace

std::vector<std::pair<double, cplx>> direct_fourier_ladder_2d(const SpectralParams& params, const Point& xi,
                                                              const SphereDirection& theta0,
                                                              const DirectFourierOptions& options) {
  params.validate();
  if (params.d != 2 || xi.size() != 2 || theta0.dim() != 2)
    throw std::invalid_argument("direct_fourier_ladder_2d: only d = 2 is supported");
  if (options.ladder.empty()) throw std::invalid_argument("direct_fourier_ladder_2d: empty damping ladder");
  for (double e : options.ladder)
    if (!(e > 0.0)) throw std::invalid_argument("direct_fourier_ladder_2d: damping parameters must be positive");
  const double eps_min = *std::min_element(options.ladder.begin(), options.ladder.end());
  const double r_max = -std::log(options.tail_tolerance) / eps_min;
  const double lam = params.lambda;
  const double sigma = lam > 0.0 ? 1.0 : -1.0;
  const MTable table(lam, 2.0 * r_max, options.table_step);

  // In y = x / (hbar^2 |lambda|):  psi = c e^{i sigma y.theta0} T(|y| - y.theta0) and
  // (D o F_hbar)[psi](xi) = c hbar^2 |lambda| / (2 pi) \int e^{-i sigma y.xi} e^{i sigma y.theta0} T(...) dy.
  const double prefactor = params.normalization() * params.hbar * params.hbar * std::abs(lam) / (2.0 * M_PI);
  const double t0 = theta0.theta[0], t1 = theta0.theta[1];
  const double k0 = sigma * (t0 - xi[0]), k1 = sigma * (t1 - xi[1]);
  const double xi_norm = waves::norm(xi);

  const numerics::QuadratureRule& rule = numerics::gauss_legendre_cached(options.radial_nodes);
  const std::size_t m = options.ladder.size();
  std::vector<cplx> sums(m, 0.0);
  const int panels = static_cast<int>(std::ceil(r_max / options.panel_width));
  for (int p = 0; p < panels; ++p) {
    const double a = p * options.panel_width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double r = a + 0.5 * options.panel_width * (rule.nodes[q] + 1.0);
      const double wr = 0.5 * options.panel_width * rule.weights[q];
      const int n = static_cast<int>(options.angular_density * r * (2.0 + xi_norm)) + 40;
      cplx ring = 0.0;
      for (int j = 0; j < n; ++j) {
        const double phi = 2.0 * M_PI * j / n;
        const double y0 = r * std::cos(phi), y1 = r * std::sin(phi);
        const double along = y0 * t0 + y1 * t1;
        ring += std::polar(1.0, k0 * y0 + k1 * y1) * table(r - along);
      }
      ring *= 2.0 * M_PI / n * r * wr;
      for (std::size_t e = 0; e < m; ++e) sums[e] += ring * std::exp(-options.ladder[e] * r);
    }
  }
  std::vector<std::pair<double, cplx>> out;
  out.reserve(m);
  for (std::size_t e = 0; e < m; ++e) out.emplace_back(options.ladder[e], prefactor * sums[e]);
  return out;
}

numerics::Extrapolated direct_fourier_transform_2d(const SpectralParams& params, const Point& xi,
                                                   const SphereDirection& theta0,
                                                   const DirectFourierOptions& options) {
  return numerics::richardson_extrapolate(direct_fourier_ladder_2d(params, xi, theta0, options), options.order);
}

}  // namespace fock::fockmap
