#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fock/cli.hpp"
#include "fock/fockmap.hpp"
#include "fock/specfun.hpp"

using namespace fock::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fockcli_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("suite names") {
  for (Suite s : all_suites()) CHECK(suite_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(suite_from_string("bogus"), ConfigError);
}

TEST_CASE("defaults mirror the acceptance grid") {
  const auto theorem = default_config(Suite::theorem);
  CHECK(theorem.dims == std::vector<int>{2, 3});
  CHECK(theorem.lambdas == std::vector<double>{1.0, 2.0});
  CHECK(theorem.l_max == 4);
  CHECK(theorem.radii == std::vector<double>{0.25, 0.5, 0.75});
  const auto repulsive = default_config(Suite::repulsive);
  CHECK(repulsive.dims == std::vector<int>{2});
  CHECK(repulsive.l_max == 2);
  const auto scattering = default_config(Suite::scattering);
  CHECK(scattering.lambdas == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(scattering.l_max == 6);
  CHECK(default_config(Suite::inversion).random_points == 50);
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# global\n"
      "d = 3\n"
      "lambda = 0.5, 1.5\n"
      "tol.funk_hecke = 1e-7\n"
      "[scattering]\n"
      "l_max = 2\n"
      "[theorem]\n"
      "l_max = 1\n");
  const auto cfg = parse_config(in, Suite::scattering);
  CHECK(cfg.dims == std::vector<int>{3});
  CHECK(cfg.lambdas == std::vector<double>{0.5, 1.5});
  CHECK(cfg.l_max == 2);
  CHECK(cfg.tolerance("funk_hecke", 1e-6) == doctest::Approx(1e-7));
  CHECK(cfg.tolerance("unitarity", 1e-12) == doctest::Approx(1e-12));

  std::istringstream bad_key("frobnicate = 1\n");
  CHECK_THROWS_AS(parse_config(bad_key, Suite::theorem), ConfigError);
  std::istringstream bad_section("[nonsense]\n");
  CHECK_THROWS_AS(parse_config(bad_section, Suite::theorem), ConfigError);
  std::istringstream bad_tol("tol.theorem = -1\n");
  CHECK_THROWS_AS(parse_config(bad_tol, Suite::theorem), ConfigError);
  std::istringstream bad_num("hbar = abc\n");
  CHECK_THROWS_AS(parse_config(bad_num, Suite::theorem), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini", Suite::theorem), ConfigError);
}

TEST_CASE("scattering campaign: unitarity rows pass") {
  auto cfg = default_config(Suite::scattering);
  cfg.output_dir = scratch("scattering").string();
  const auto result = run_campaign(cfg);
  CHECK(result.exit_code == 0);
  std::size_t unitarity = 0;
  for (const auto& r : result.rows)
    if (r.test_id == "unitarity") {
      ++unitarity;
      CHECK(r.pass());
    }
  CHECK(unitarity == 2 * 3 * 7);
  CHECK(std::filesystem::exists(std::filesystem::path(cfg.output_dir) / "scattering.csv"));
  const std::string summary = slurp(std::filesystem::path(cfg.output_dir) / "scattering_summary.txt");
  CHECK(summary.find("failed 0") != std::string::npos);
}

TEST_CASE("moser campaign is deterministic under a fixed seed") {
  auto cfg = default_config(Suite::moser);
  cfg.seed = 42;
  const auto dir_a = scratch("moser_a");
  const auto dir_b = scratch("moser_b");
  cfg.output_dir = dir_a.string();
  const auto a = run_campaign(cfg);
  cfg.output_dir = dir_b.string();
  const auto b = run_campaign(cfg);
  CHECK(a.exit_code == 0);
  const std::string report = slurp(dir_a / "moser.csv");
  CHECK(report.size() > 100);
  CHECK(report == slurp(dir_b / "moser.csv"));
  CHECK(slurp(dir_a / "moser_summary.txt") == slurp(dir_b / "moser_summary.txt"));
  CHECK(b.rows.size() == a.rows.size());
}

TEST_CASE("a tightened tolerance fails with exit code 1") {
  auto cfg = default_config(Suite::scattering);
  cfg.tolerances["funk_hecke"] = 1e-30;
  cfg.output_dir = scratch("tight").string();
  const auto result = run_campaign(cfg);
  CHECK(result.exit_code == 1);
  CHECK(result.failed() > 0);
  const std::string summary = slurp(std::filesystem::path(cfg.output_dir) / "scattering_summary.txt");
  CHECK(summary.find("FAIL funk_hecke") != std::string::npos);
}

TEST_CASE("eval") {
  EvalRequest psi{"psi", 2, 1.0, 1.0, {0.0, 0.0}, {1.0, 0.0}};
  const double c = fock::waves::SpectralParams(2, 1.0, 1.0).normalization();
  CHECK(std::abs(evaluate(psi) - c * fock::specfun::rgamma(0.5)) <= 1e-14);
  EvalRequest e{"e_lambda", 2, 1.0, 1.0, {0.0, 0.0}, {1.0, 0.0}};
  CHECK(std::abs(evaluate(e) - 1.0) <= 1e-15);
  EvalRequest f{"fourier_closed", 3, 1.0, 2.0, {1.5, 0.2, -0.4}, {0.0, 0.0, 1.0}};
  const fock::waves::SpectralParams p(3, 1.0, 2.0);
  CHECK(evaluate(f) == fock::fockmap::fourier_closed_form(p, {1.5, 0.2, -0.4}, fock::waves::SphereDirection({0.0, 0.0, 1.0})));
  EvalRequest bad{"nope", 2, 1.0, 1.0, {0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(evaluate(bad), ConfigError);
  EvalRequest wrong_dim{"psi", 3, 1.0, 1.0, {0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(evaluate(wrong_dim), ConfigError);
}

TEST_CASE("figures") {
  CHECK(figure_value("ppw_hyperbolic", 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // (1/sqrt 2) Re(c_{1,1} / Gamma(1/2)) with c_{1,1} = sqrt(2 pi)
  CHECK(figure_value("ppw_coulomb", 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(figure_value("ppw_euclidean", M_PI, 3.0) == doctest::Approx(-1.0));

  std::ostringstream level;
  write_figure("level_sets", default_grid("level_sets"), level);
  std::istringstream rows(level.str());
  std::string line;
  std::getline(rows, line);
  CHECK(line == "branch,x,xi,H");
  int n = 0;
  while (std::getline(rows, line)) {
    const auto last = line.rfind(',');
    CHECK(std::abs(std::stod(line.substr(last + 1)) - 0.5) <= 1e-12);
    ++n;
  }
  CHECK(n > 100);

  std::ostringstream hyp;
  write_figure("ppw_hyperbolic", GridSpec{-1.0, 1.0, -1.0, 1.0, 11, 11}, hyp);
  const std::string s = hyp.str();
  CHECK(s.find("-1,-1,") == std::string::npos);  // outside the ball: skipped
  CHECK_THROWS_AS(write_figure("ppw_hyperbolic", GridSpec{1.0, 0.0, -1.0, 1.0, 11, 11}, hyp), ConfigError);
  CHECK_THROWS_AS(write_figure("nonsense", default_grid("ppw_euclidean"), hyp), ConfigError);
}
