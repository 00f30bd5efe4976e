#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fock/csv.hpp"
#include "fock/waves.hpp"

namespace fock::waves {

namespace {

// Unit direction of x; the north pole (last axis) at the origin, where every l >= 1
// radial factor vanishes anyway.
Point direction_of(const Point& x) {
  const double r = norm(x);
  Point u(x.size(), 0.0);
  if (r == 0.0) {
    u.back() = 1.0;
    return u;
  }
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] / r;
  return u;
}

cplx radial_factor(WaveKind kind, const SpectralParams& params, int l, double r) {
  switch (kind) {
    case WaveKind::coulomb: return coulomb_partial_wave(params, l, r);
    case WaveKind::repulsive: return repulsive_partial_wave(params, l, r);
    case WaveKind::hyperbolic: return hyperbolic_partial_wave(params.lambda, params.d, l, r);
  }
  throw std::invalid_argument("radial_factor: unknown kind");
}

void check_point(WaveKind kind, const SpectralParams& params, const Point& x) {
  if (static_cast<int>(x.size()) != params.d) throw std::invalid_argument("poisson_synthesize: point dimension mismatch");
  if (kind == WaveKind::hyperbolic && !(norm(x) < 1.0))
    throw std::domain_error("poisson_synthesize: hyperbolic points must lie inside the unit ball");
}

}  // namespace

WaveField poisson_synthesize(WaveKind kind, const SpectralParams& params, const BoundaryData& f,
                             const std::vector<Point>& points) {
  params.validate();
  f.validate();
  if (f.d != params.d) throw std::invalid_argument("poisson_synthesize: boundary data dimension mismatch");
  WaveField field;
  field.kind = kind;
  field.params = params;
  field.grid = points;
  field.values.reserve(points.size());
  for (const Point& x : points) {
    check_point(kind, params, x);
    const double r = norm(x);
    const Point u = direction_of(x);
    cplx value = 0.0;
    for (int l = 0; l <= f.l_max; ++l) {
      cplx angular = 0.0;
      for (int m = 0; m < static_cast<int>(f.coefficients[l].size()); ++m) {
        if (f.coefficients[l][m] != cplx(0.0)) angular += f.coefficients[l][m] * real_harmonic(params.d, l, m, u);
      }
      if (angular != cplx(0.0)) value += angular * radial_factor(kind, params, l, r);
    }
    field.values.push_back(value);
  }
  return field;
}

cplx kernel_quadrature(WaveKind kind, const SpectralParams& params, const BoundaryData& f, const Point& x,
                       const SphereQuadrature& quad) {
  params.validate();
  f.validate();
  check_point(kind, params, x);
  auto integrand = [&](const Point& theta) -> cplx {
    const SphereDirection dir(theta);
    cplx k;
    switch (kind) {
      case WaveKind::coulomb: k = coulomb_plane_wave(params, x, dir); break;
      case WaveKind::repulsive: k = repulsive_plane_wave(params, x, dir); break;
      case WaveKind::hyperbolic: k = hyperbolic_plane_wave(params.lambda, x, dir); break;
    }
    return k * f.evaluate(theta);
  };
  return sphere_integrate(params.d, integrand, quad);
}

void write_wavefield_csv(const WaveField& field, std::ostream& out) {
  out << "# kind=" << to_string(field.kind) << ",d=" << field.params.d << ",hbar=" << csv::num(field.params.hbar)
      << ",lambda=" << csv::num(field.params.lambda) << '\n';
  std::vector<std::string> header;
  for (int i = 1; i <= field.params.d; ++i) header.push_back("x" + std::to_string(i));
  header.push_back("re");
  header.push_back("im");
  csv::write_row(out, header);
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    std::vector<std::string> row;
    for (double c : field.grid[i]) row.push_back(csv::num(c));
    row.push_back(csv::num(field.values[i].real()));
    row.push_back(csv::num(field.values[i].imag()));
    csv::write_row(out, row);
  }
}

}  // namespace fock::waves
