// fockcli: verification campaigns, single-point evaluations and figure data.
//
//   fockcli run <suite|all> [--config FILE] [--out DIR] [--seed N] [--tol-scale X]
//   fockcli eval <expr> --point a,b[,c] [--theta ...] [--d D] [--hbar H] [--lambda L]
//   fockcli figure <name> [--out DIR|-] [--grid xmin,xmax,ymin,ymax,nx,ny]
//
// The default output directory is $FOCK_OUT_DIR when set, else the working directory.
// Exit codes: 0 all checks passed, 1 tolerance or numerical failure, 2 usage/config error.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "fock/cli.hpp"

namespace {

constexpr const char* kOutEnv = "FOCK_OUT_DIR";

std::string default_out_dir() {
  const char* env = std::getenv(kOutEnv);
  return env && *env ? env : ".";
}

int run_suites(const std::string& which, const std::string& config_path, const std::string& out,
               const std::optional<std::uint64_t>& seed, const std::optional<double>& tol_scale) {
  std::vector<fock::cli::Suite> suites;
  if (which == "all") {
    suites = fock::cli::all_suites();
  } else {
    suites.push_back(fock::cli::suite_from_string(which));
  }
  int status = 0;
  for (auto suite : suites) {
    auto cfg = config_path.empty() ? fock::cli::default_config(suite) : fock::cli::load_config(config_path, suite);
    if (!out.empty()) {
      cfg.output_dir = out;
    } else if (cfg.output_dir == ".") {
      cfg.output_dir = default_out_dir();
    }
    if (seed) cfg.seed = *seed;
    if (tol_scale) cfg.tol_scale = *tol_scale;
    cfg.validate();
    const auto result = fock::cli::run_campaign(cfg);
    std::cout << fock::cli::to_string(suite) << ": " << result.passed() << " passed, " << result.failed() << " failed ("
              << (std::filesystem::path(cfg.output_dir) / (fock::cli::to_string(suite) + ".csv")).string() << ")\n";
    if (result.exit_code != 0) {
      fock::cli::write_campaign_summary(result, std::cerr);
      status = 1;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coulomb / hyperbolic-space correspondence: verification campaigns and evaluations"};
  app.require_subcommand(1);

  std::string suite, config_path, out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_scale;
  auto* run = app.add_subcommand("run", "Run a verification campaign (lemma, theorem, repulsive, scattering, moser, "
                                        "inversion, figures, or all)");
  run->add_option("suite", suite, "Suite name or 'all'")->required();
  run->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
  run->add_option("--out", out, std::string("Output directory (default: $") + kOutEnv + " or .)");
  run->add_option("--seed", seed, "Seed of the randomized point clouds");
  run->add_option("--tol-scale", tol_scale, "Multiply every tolerance by this factor");

  fock::cli::EvalRequest req;
  auto* eval = app.add_subcommand("eval", "Evaluate psi, psi_minus, e_lambda, s_kernel or fourier_closed at a point");
  eval->add_option("expr", req.expr, "Expression")->required()
      ->check(CLI::IsMember({"psi", "psi_minus", "e_lambda", "s_kernel", "fourier_closed"}));
  eval->add_option("--d", req.d, "Dimension")->capture_default_str();
  eval->add_option("--hbar", req.hbar, "Semiclassical parameter")->capture_default_str();
  eval->add_option("--lambda", req.lambda, "Spectral parameter")->capture_default_str();
  eval->add_option("--point", req.point, "Point (x, u, xi, or theta for s_kernel)")->required()->delimiter(',');
  eval->add_option("--theta", req.theta, "Direction theta0 (theta' for s_kernel)")->delimiter(',');

  std::string figure_name, figure_out;
  std::vector<double> grid_values;
  auto* figure = app.add_subcommand("figure", "Write the CSV data of a figure");
  figure->add_option("name", figure_name, "ppw_euclidean, ppw_coulomb, ppw_hyperbolic, ft_field or level_sets")->required();
  figure->add_option("--out", figure_out, "Output directory, or - for stdout");
  figure->add_option("--grid", grid_values, "xmin,xmax,ymin,ymax,nx,ny")->delimiter(',')->expected(6);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_suites(suite, config_path, out, seed, tol_scale);
    if (*eval) {
      if (req.theta.size() != req.point.size() && req.theta == std::vector<double>{1.0, 0.0}) {
        req.theta.assign(req.point.size(), 0.0);
        req.theta[0] = 1.0;
      }
      const auto v = fock::cli::evaluate(req);
      std::cout << std::setprecision(17) << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i\n";
      return 0;
    }
    if (*figure) {
      auto grid = fock::cli::default_grid(figure_name);
      if (!grid_values.empty()) {
        grid = fock::cli::GridSpec{grid_values[0], grid_values[1], grid_values[2], grid_values[3],
                                   static_cast<int>(grid_values[4]), static_cast<int>(grid_values[5])};
      }
      grid.validate();
      if (figure_out == "-") {
        fock::cli::write_figure(figure_name, grid, std::cout);
        return 0;
      }
      const std::filesystem::path dir = figure_out.empty() ? default_out_dir() : figure_out;
      std::filesystem::create_directories(dir);
      const auto path = dir / ("figure_" + figure_name + ".csv");
      std::ofstream file(path);
      if (!file) throw fock::cli::ConfigError("cannot write " + path.string());
      fock::cli::write_figure(figure_name, grid, file);
      std::cout << path.string() << "\n";
      return 0;
    }
  } catch (const fock::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
