// Acceptance run: one PASS/FAIL line per acceptance criterion (1-9), with the measured worst
// error and runtime. Exit code 0 iff every criterion passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fock/cli.hpp"
#include "fock/fockmap.hpp"
#include "fock/specfun.hpp"
#include "fock/waves.hpp"

namespace {

using fock::cli::cplx;
using fock::waves::Point;
using fock::waves::SpectralParams;
using fock::waves::SphereDirection;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string report_dir = "acceptance_reports";

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome campaign(fock::cli::Suite suite, const std::vector<std::string>& ids, double budget_seconds) {
  auto cfg = fock::cli::default_config(suite);
  cfg.output_dir = report_dir;
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = fock::cli::run_campaign(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream s;
  s << result.passed() << "/" << result.rows.size() << " rows within tolerance";
  for (const auto& id : ids) s << "; max " << id << " error " << sci(result.max_error(id));
  s << "; " << sci(secs) << " s (budget " << budget_seconds << " s)";
  return {result.exit_code == 0 && secs <= budget_seconds, s.str()};
}

Point random_unit(std::mt19937_64& g, int d) {
  std::normal_distribution<double> n;
  Point p(d);
  double r = 0.0;
  for (double& v : p) {
    v = n(g);
    r += v * v;
  }
  for (double& v : p) v /= std::sqrt(r);
  return p;
}

// 1. Partial-wave commutation of the Fock map.
Outcome criterion1() { return campaign(fock::cli::Suite::theorem, {"theorem"}, 300.0); }

// 2. Direct two-dimensional transform of the plane wave against the closed form.
Outcome criterion2() {
  const SpectralParams p(2, 1.0, 1.0);
  const SphereDirection t0(Point{1.0, 0.0});
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const Point& xi : {Point{2.0, 0.5}, Point{0.4, 0.1}, Point{-1.5, 1.0}})
    worst = std::max(worst, rel(fock::fockmap::direct_fourier_transform_2d(p, xi, t0).value,
                                fock::fockmap::fourier_closed_form(p, xi, t0)));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-3 && secs <= 600.0,
          "max rel error " + sci(worst) + " at 3 points (tol 1e-3); " + sci(secs) + " s (budget 600 s)"};
}

// 3. Inversion symmetry of the closed forms and the branch factor.
Outcome criterion3() {
  double worst = 0.0, branch = 0.0;
  for (int d : {2, 3})
    for (double lam : {1.0, 2.0}) {
      const SpectralParams p(d, 1.0, lam);
      std::mt19937_64 g(1000 * d + static_cast<int>(lam));
      std::uniform_real_distribution<double> radius(0.05, 0.95);
      const SphereDirection t0(random_unit(g, d));
      for (int k = 0; k < 50; ++k) {
        Point xi = random_unit(g, d);
        const double r = radius(g);
        for (double& v : xi) v *= r;
        worst = std::max(worst, fock::fockmap::inversion_symmetry_check(p, xi, t0).deviation);
      }
      branch = std::max(branch, rel(fock::fockmap::interior_branch_factor(lam), -std::exp(M_PI * lam)));
    }
  return {worst <= 1e-12 && branch <= 1e-12,
          "max deviation " + sci(worst) + " over 200 points; branch factor error " + sci(branch) + " (tol 1e-12)"};
}

// 4. Scattering matrix: Funk–Hecke, unitarity, s(lambda) s(-lambda) = 1.
Outcome criterion4() {
  return campaign(fock::cli::Suite::scattering, {"funk_hecke", "unitarity", "reflection"}, 600.0);
}

// 5. Partial-wave closed forms against direct sphere quadrature; appendix integral two paths.
Outcome criterion5() {
  double worst = 0.0;
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // Random boundary data with every degree l <= 4 present, so no evaluation sits on a nodal set.
  for (int d : {2, 3})
    for (double lam : {1.0, 2.0}) {
      const SpectralParams p(d, 1.0, lam);
      const auto f = fock::waves::BoundaryData::random(d, 4, 17 + d);
      for (int k = 0; k < 5; ++k) {
        Point x(d), v(d);
        for (int i = 0; i < d; ++i) {
          x[i] = 2.0 * u(g);
          v[i] = 0.5 * u(g);
        }
        using fock::waves::WaveKind;
        const auto c = fock::waves::poisson_synthesize(WaveKind::coulomb, p, f, {x}).values[0];
        const auto h = fock::waves::poisson_synthesize(WaveKind::hyperbolic, p, f, {v}).values[0];
        worst = std::max(worst, rel(fock::waves::kernel_quadrature(WaveKind::coulomb, p, f, x), c));
        worst = std::max(worst, rel(fock::waves::kernel_quadrature(WaveKind::hyperbolic, p, f, v), h));
      }
    }
  double two_path = 0.0;
  for (int d : {2, 3})
    for (double lam : {0.5, 1.0, 2.0})
      for (int l = 0; l <= 4; ++l)
        for (double x : {1.2, 2.0, 3.0})
          two_path = std::max(two_path, rel(fock::fockmap::appendix_I_integral(lam, l, d, x),
                                            fock::fockmap::appendix_I_integral_cosh(lam, l, d, x)));
  return {worst <= 1e-7 && two_path <= 1e-9,
          "synthesis vs quadrature " + sci(worst) + " (tol 1e-7); appendix integral two paths " + sci(two_path) + " (tol 1e-9)"};
}

// 6. Finite-difference eigen-equation residuals at h = 1e-3 and their order.
Outcome criterion6() {
  auto grid = [](double a, double b, double h) {
    std::vector<double> g;
    const int n = static_cast<int>(std::llround((b - a) / h));
    for (int i = 0; i <= n; ++i) g.push_back(a + i * h);
    return g;
  };
  double worst = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
  auto record = [&](double coarse, double fine) {
    worst = std::max(worst, fine);
    ratio_lo = std::min(ratio_lo, coarse / fine);
    ratio_hi = std::max(ratio_hi, coarse / fine);
  };
  for (int d : {2, 3})
    for (int l = 0; l <= 4; ++l) {
      const SpectralParams p(d, 1.0, 1.0);
      record(fock::waves::eigen_residual_coulomb(p, l, grid(1.0, 5.0, 2e-3)),
             fock::waves::eigen_residual_coulomb(p, l, grid(1.0, 5.0, 1e-3)));
      record(fock::waves::eigen_residual_repulsive(p, l, grid(1.0, 5.0, 2e-3)),
             fock::waves::eigen_residual_repulsive(p, l, grid(1.0, 5.0, 1e-3)));
      record(fock::waves::eigen_residual_hyperbolic(1.0, d, l, grid(0.1, 0.8, 2e-3)),
             fock::waves::eigen_residual_hyperbolic(1.0, d, l, grid(0.1, 0.8, 1e-3)));
    }
  return {worst <= 1e-4 && ratio_lo >= 3.5 && ratio_hi <= 4.5,
          "max residual " + sci(worst) + " at h=1e-3 (tol 1e-4); halving ratios in [" + sci(ratio_lo) + ", " +
              sci(ratio_hi) + "] (expected ~4)"};
}

// 7. Moser map and Kepler flow.
Outcome criterion7() {
  return campaign(fock::cli::Suite::moser,
                  {"moser_roundtrip", "symplectic", "on_shell", "conserved_drift", "runge_lenz", "period",
                   "correspondence", "time_scaling"},
                  120.0);
}

// 8. Repulsive variant.
Outcome criterion8() { return campaign(fock::cli::Suite::repulsive, {"repulsive"}, 300.0); }

// 9. Special-function floor.
Outcome criterion9() {
  using namespace fock::specfun;
  int failures = 0;
  std::string failed;
  auto check = [&](bool ok, const char* what) {
    if (!ok) {
      ++failures;
      failed += std::string(" ") + what;
    }
  };
  check(std::abs(log_gamma(1.0)) <= 1e-15, "lgamma(1)");
  check(std::abs(log_gamma(0.5) - std::log(std::sqrt(M_PI))) <= 1e-13, "lgamma(1/2)");
  check(std::abs(std::norm(gamma(cplx(0.0, 1.0))) - M_PI / std::sinh(M_PI)) <= 1e-12, "|Gamma(i)|^2");
  check(std::abs(log_gamma({3.0, 4.0}) - cplx(-1.7566267846037841, 4.7426644380346579)) <= 1e-13, "lgamma(3+4i)");
  check(rel(pochhammer({0.0, 1.0}, 3), gamma(cplx(3.0, 1.0)) / gamma(cplx(0.0, 1.0))) <= 1e-13, "pochhammer");
  check(rel(olver_M({0.3, 1.0}, {1.5, -0.2}, 0.0), rgamma({1.5, -0.2})) <= 1e-15, "M at 0");
  check(rel(olver_M(0.0, 2.5, {0.0, 30.0}), rgamma(2.5)) <= 1e-13, "M(0;b;z)");
  check(rel(olver_M({0.0, 1.0}, 0.5, {0.0, 60.0}), cplx(0.10153862571738957, 0.40708033370319093)) <= 1e-9, "M r=60");
  check(std::abs(bessel_j(0.5, 2.0) - std::sqrt(1.0 / M_PI) * std::sin(2.0)) <= 1e-12, "J_1/2");
  check(std::abs(bessel_j(2.0, 7.0) + bessel_j(4.0, 7.0) - (6.0 / 7.0) * bessel_j(3.0, 7.0)) <= 1e-10, "J recurrence");
  check(std::abs(conical_legendre_P(0.0, 0.0, 3.0) / 0.83462684167407319 - 1.0) <= 1e-9, "P_{-1/2}(3)");
  check(std::abs(conical_legendre_P(1.0, 1.0, 5.0 / 3.0) / 0.41153146544023032 - 1.0) <= 1e-9, "conical mu=1");
  check(std::abs(gegenbauer_C(4, 0.5, 0.3) - std::legendre(4, 0.3)) <= 1e-12, "Gegenbauer");
  check(std::abs(plancherel_density(1.0, 2) / 3.1298810356317586 - 1.0) <= 1e-12, "Plancherel d=2");
  check(std::abs(plancherel_density(2.0, 3) / 4.0 - 1.0) <= 1e-12, "Plancherel d=3");

  std::mt19937_64 g(42);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  const RegimePolicy policy;
  double overlap = 0.0;
  for (int k = 0; k < 200; ++k) {
    cplx a, b;
    do a = {u(g), u(g)}; while (std::abs(a) > 6.0);
    do b = {u(g), u(g)}; while (std::abs(b) > 6.0);
    const cplx z(0.0, policy.series_radius);
    overlap = std::max(overlap, rel(olver_M_asymptotic(a, b, z, policy.asymptotic_terms).value, olver_M_series(a, b, z)));
  }
  check(overlap <= 1e-9, "regime overlap");
  return {failures == 0, std::to_string(15 - failures) + "/15 value checks; regime overlap " + sci(overlap) + " (tol 1e-9)" +
                             (failed.empty() ? "" : "; failed:" + failed)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) report_dir = argv[1];
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"partial-wave commutation of the Fock map", criterion1},
      {"direct 2-D Fourier transform of the plane wave", criterion2},
      {"inversion symmetry in Fourier space", criterion3},
      {"scattering matrix eigenvalues", criterion4},
      {"partial waves and appendix integral", criterion5},
      {"eigen-equation residuals", criterion6},
      {"Moser map and Kepler flow", criterion7},
      {"repulsive Fock map", criterion8},
      {"special-function floor", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
