#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fock/numerics.hpp"
#include "fock/waves.hpp"

namespace fock::waves {

SpectralParams::SpectralParams(int d_, double hbar_, double lambda_) : d(d_), hbar(hbar_), lambda(lambda_) {
  validate();
}

void SpectralParams::validate() const {
  if (d < 2) throw std::invalid_argument("SpectralParams: d must be >= 2");
  if (!(hbar > 0.0)) throw std::invalid_argument("SpectralParams: hbar must be positive");
  if (!(lambda != 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("SpectralParams: lambda must be nonzero");
}

double SpectralParams::energy() const { return 1.0 / (2.0 * hbar * hbar * lambda * lambda); }

double SpectralParams::normalization() const {
  return std::sqrt(2.0 * M_PI) * std::pow(std::abs(lambda), -0.5 * d - 1.0) * std::pow(hbar, -static_cast<double>(d));
}

double SpectralParams::wavenumber() const { return 1.0 / (hbar * hbar * lambda); }

SphereDirection::SphereDirection(Point t) : theta(std::move(t)) {
  if (theta.size() < 2) throw std::invalid_argument("SphereDirection: dimension must be >= 2");
  if (std::abs(norm(theta) - 1.0) > 1e-12) throw std::invalid_argument("SphereDirection: vector is not unit length");
}

double norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int harmonic_dimension(int d, int l) {
  if (l < 0) throw std::invalid_argument("harmonic_dimension: l must be >= 0");
  if (d == 2) return l == 0 ? 1 : 2;
  if (d == 3) return 2 * l + 1;
  throw std::invalid_argument("harmonic_dimension: harmonic bases are provided for d = 2 and d = 3");
}

double real_harmonic(int d, int l, int m, const Point& unit) {
  if (static_cast<int>(unit.size()) != d) throw std::invalid_argument("real_harmonic: dimension mismatch");
  if (m < 0 || m >= harmonic_dimension(d, l)) throw std::invalid_argument("real_harmonic: index out of range");
  if (d == 2) {
    const double phi = std::atan2(unit[1], unit[0]);
    if (l == 0) return 1.0 / std::sqrt(2.0 * M_PI);
    return (m == 0 ? std::cos(l * phi) : std::sin(l * phi)) / std::sqrt(M_PI);
  }
  const double polar = std::acos(std::clamp(unit[2] / norm(unit), -1.0, 1.0));
  const double phi = std::atan2(unit[1], unit[0]);
  const int order = m - l;
  if (order == 0) return std::sph_legendre(l, 0, polar);
  const int k = std::abs(order);
  const double base = std::sqrt(2.0) * std::sph_legendre(l, k, polar);
  return order > 0 ? base * std::cos(k * phi) : base * std::sin(k * phi);
}

BoundaryData BoundaryData::zeros(int d, int l_max) {
  if (l_max < 0) throw std::invalid_argument("BoundaryData: l_max must be >= 0");
  BoundaryData f;
  f.d = d;
  f.l_max = l_max;
  for (int l = 0; l <= l_max; ++l) f.coefficients.emplace_back(harmonic_dimension(d, l), cplx(0.0));
  return f;
}

BoundaryData BoundaryData::mode(int d, int l_max, int l, int m) {
  BoundaryData f = zeros(d, l_max);
  if (l > l_max || m < 0 || m >= harmonic_dimension(d, l)) throw std::invalid_argument("BoundaryData: mode out of range");
  f.coefficients[l][m] = 1.0;
  return f;
}

BoundaryData BoundaryData::random(int d, int l_max, std::uint64_t seed) {
  BoundaryData f = zeros(d, l_max);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& row : f.coefficients) {
    for (auto& c : row) {
      const double re = normal(gen);
      const double im = normal(gen);
      c = cplx(re, im);
    }
  }
  return f;
}

void BoundaryData::validate() const {
  if (l_max < 0) throw std::invalid_argument("BoundaryData: l_max must be >= 0");
  if (static_cast<int>(coefficients.size()) != l_max + 1)
    throw std::invalid_argument("BoundaryData: expected l_max + 1 coefficient rows");
  for (int l = 0; l <= l_max; ++l) {
    if (static_cast<int>(coefficients[l].size()) != harmonic_dimension(d, l))
      throw std::invalid_argument("BoundaryData: coefficient count does not match the harmonic dimension");
  }
}

double BoundaryData::norm() const {
  double s = 0.0;
  for (const auto& row : coefficients)
    for (const auto& c : row) s += std::norm(c);
  return std::sqrt(s);
}

cplx BoundaryData::evaluate(const Point& unit) const {
  cplx s = 0.0;
  for (int l = 0; l <= l_max; ++l)
    for (int m = 0; m < static_cast<int>(coefficients[l].size()); ++m)
      if (coefficients[l][m] != cplx(0.0)) s += coefficients[l][m] * real_harmonic(d, l, m, unit);
  return s;
}

cplx sphere_integrate(int d, const std::function<cplx(const Point&)>& g, const SphereQuadrature& quad) {
  if (d == 2) {
    const int n = quad.circle_points;
    if (n < 1) throw std::invalid_argument("sphere_integrate: circle_points must be positive");
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * M_PI * j / n;
      s += g({std::cos(phi), std::sin(phi)});
    }
    return s * (2.0 * M_PI / n);
  }
  if (d == 3) {
    const auto& rule = numerics::gauss_legendre_cached(quad.polar_points);
    const int na = quad.azimuth_points;
    if (na < 1) throw std::invalid_argument("sphere_integrate: azimuth_points must be positive");
    cplx s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double c = rule.nodes[i];
      const double sn = std::sqrt(1.0 - c * c);
      cplx ring = 0.0;
      for (int j = 0; j < na; ++j) {
        const double phi = 2.0 * M_PI * j / na;
        ring += g({sn * std::cos(phi), sn * std::sin(phi), c});
      }
      s += rule.weights[i] * ring;
    }
    return s * (2.0 * M_PI / na);
  }
  throw std::invalid_argument("sphere_integrate: only d = 2 and d = 3 are supported");
}

std::string to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::coulomb: return "coulomb";
    case WaveKind::hyperbolic: return "hyperbolic";
    case WaveKind::repulsive: return "repulsive";
  }
  return "unknown";
}

WaveKind wave_kind_from_string(const std::string& name) {
  if (name == "coulomb") return WaveKind::coulomb;
  if (name == "hyperbolic") return WaveKind::hyperbolic;
  if (name == "repulsive") return WaveKind::repulsive;
  throw std::invalid_argument("unknown wave kind: " + name);
}

}  // namespace fock::waves
