#include <cmath>
#include <ostream>

#include "fock/cli.hpp"
#include "fock/csv.hpp"
#include "fock/fockmap.hpp"
#include "fock/kepler.hpp"
#include "fock/waves.hpp"

namespace fock::cli {

namespace {

constexpr double kFtEpsilon = 0.05;  // fixed regularization of the transform plot
constexpr double kLevel = 0.5;       // energy of the level-set plot

const waves::SphereDirection& east() {
  static const waves::SphereDirection theta0(waves::Point{1.0, 0.0});
  return theta0;
}

bool defined_at(const std::string& name, double x, double y) {
  if (name == "ppw_hyperbolic") return x * x + y * y < 1.0;
  if (name == "ft_field") return true;  // finite for eps > 0
  return true;
}

}  // namespace

void GridSpec::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min)) throw ConfigError("grid: empty extent");
  if (nx < 2 || ny < 2) throw ConfigError("grid: need at least 2 points per axis");
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"ppw_euclidean", "ppw_coulomb", "ppw_hyperbolic", "ft_field", "level_sets"};
  return names;
}

GridSpec default_grid(const std::string& figure) {
  GridSpec g;
  if (figure == "ppw_euclidean" || figure == "ppw_coulomb") return g;
  if (figure == "ppw_hyperbolic") return GridSpec{-1.0, 1.0, -1.0, 1.0, 201, 201};
  if (figure == "ft_field") return GridSpec{-3.0, 3.0, -3.0, 3.0, 241, 241};
  if (figure == "level_sets") return GridSpec{-4.0, 4.0, -3.0, 3.0, 401, 2};
  throw ConfigError("figure: unknown name '" + figure + "'");
}

double figure_value(const std::string& name, double x, double y) {
  const waves::Point p{x, y};
  if (name == "ppw_euclidean") return std::cos(x);
  if (name == "ppw_coulomb")
    return waves::coulomb_plane_wave(waves::SpectralParams(2, 1.0, 1.0), p, east()).real() / std::sqrt(2.0);
  if (name == "ppw_hyperbolic") return waves::hyperbolic_plane_wave(1.0, p, east()).real();
  if (name == "ft_field")
    return fockmap::fourier_regularized(waves::SpectralParams(2, 1.0, 1.0), p, east(), kFtEpsilon).real();
  if (name == "level_sets") {
    // phase plane of the one-dimensional problem: (x, xi) -> H^+ (y >= 0 sheet of the plot uses the same value)
    return 0.5 * y * y - 1.0 / std::abs(x);
  }
  throw ConfigError("figure: unknown name '" + name + "'");
}

void write_figure(const std::string& name, const GridSpec& grid, std::ostream& out) {
  grid.validate();
  if (name == "level_sets") {
    // Contours H^+-(x, xi) = |xi|^2/2 -/+ 1/|x| = 1/2 in the (x, xi) plane, sampled over x.
    csv::write_row(out, {"branch", "x", "xi", "H"});
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1);
      if (x == 0.0) continue;
      for (int sgn : {+1, -1}) {
        const double rhs = 2.0 * (kLevel + sgn / std::abs(x));
        if (rhs < 0.0) continue;
        const kepler::Branch branch = sgn > 0 ? kepler::Branch::attractive : kepler::Branch::repulsive;
        for (double xi : {std::sqrt(rhs), -std::sqrt(rhs)}) {
          if (xi < grid.y_min || xi > grid.y_max) continue;
          const double H = kepler::hamiltonian(branch, kepler::PhasePoint{{x}, {xi}});
          csv::write_row(out, {sgn > 0 ? "attractive" : "repulsive", csv::num(x), csv::num(xi), csv::num(H)});
        }
      }
    }
    return;
  }
  figure_value(name, 0.5, 0.5);  // validates the name
  csv::write_row(out, {"x", "y", "value"});
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y_min + (grid.y_max - grid.y_min) * j / (grid.ny - 1);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1);
      if (!defined_at(name, x, y)) continue;
      csv::write_row(out, {csv::num(x), csv::num(y), csv::num(figure_value(name, x, y))});
    }
  }
}

}  // namespace fock::cli
