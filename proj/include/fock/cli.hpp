// Verification campaigns, single-point evaluations and figure-data emission behind the
// fockcli command-line tool.
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fock::cli {

using cplx = std::complex<double>;

/// Invalid configuration or usage (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Suite { lemma, theorem, repulsive, scattering, moser, inversion, figures };
std::string to_string(Suite s);
Suite suite_from_string(const std::string& name);
const std::vector<Suite>& all_suites();

/// Campaign settings. Every default mirrors the acceptance grid, so an empty configuration
/// reproduces the acceptance runs.
struct CampaignConfig {
  Suite suite = Suite::theorem;
  std::vector<int> dims{2, 3};
  std::vector<double> hbars{1.0};
  std::vector<double> lambdas{1.0, 2.0};
  int l_max = 4;
  std::vector<double> radii{0.25, 0.5, 0.75};  // ball radii rho
  int random_points = 50;
  std::map<std::string, double> tolerances;    // per-check overrides, e.g. "theorem" -> 1e-5
  double tol_scale = 1.0;
  std::string output_dir = ".";
  std::uint64_t seed = 42;

  /// Tolerance of the named check: the override if present, else `fallback`, times tol_scale.
  double tolerance(const std::string& check, double fallback) const;
  void validate() const;
};

/// Suite defaults (the acceptance grid of that suite).
CampaignConfig default_config(Suite suite);

/// Flat key=value text with optional [suite] sections; '#' starts a comment. Keys outside any
/// section apply to every suite; keys in the section named after `suite` override them; other
/// sections are ignored. Lists are comma separated. Recognised keys: d, hbar, lambda, l_max,
/// rho, random_points, seed, output_dir, tol_scale and tol.<check>. Throws ConfigError.
CampaignConfig parse_config(std::istream& in, Suite suite);
CampaignConfig load_config(const std::string& path, Suite suite);

struct CampaignRow {
  std::string test_id;
  int d = 0;
  double hbar = 1.0;
  double lambda = 0.0;
  std::string index;
  cplx lhs;
  cplx rhs;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass() const { return rel_error <= tolerance; }
};

struct CampaignResult {
  Suite suite = Suite::theorem;
  std::vector<CampaignRow> rows;
  int exit_code = 0;  // 0 iff every row passes
  std::size_t passed() const;
  std::size_t failed() const;
  double max_error(const std::string& test_id) const;
};

/// Runs the suite, writes <output_dir>/<suite>.csv and <output_dir>/<suite>_summary.txt.
CampaignResult run_campaign(const CampaignConfig& config);

void write_campaign_csv(const CampaignResult& result, std::ostream& out);
/// Pass/fail counts, max error per test id, and one "FAIL ..." line per failing row.
void write_campaign_summary(const CampaignResult& result, std::ostream& out);

// ---------------------------------------------------------------------------

struct EvalRequest {
  std::string expr;  // psi, psi_minus, e_lambda, s_kernel, fourier_closed
  int d = 2;
  double hbar = 1.0;
  double lambda = 1.0;
  std::vector<double> point;              // x, u or xi (theta for s_kernel)
  std::vector<double> theta{1.0, 0.0};    // theta0 (theta' for s_kernel)
};

cplx evaluate(const EvalRequest& request);

// ---------------------------------------------------------------------------

struct GridSpec {
  double x_min = -10.0, x_max = 10.0;
  double y_min = -10.0, y_max = 10.0;
  int nx = 201, ny = 201;
  void validate() const;
};

/// Default grid of a named figure (the extents of the plots it reproduces).
GridSpec default_grid(const std::string& figure);
const std::vector<std::string>& figure_names();

/// Regular-grid CSV (x, y, value) of the named real field; level_sets emits contour samples
/// (branch, x, xi, H). Points outside the domain of a field (|u| >= 1 for the hyperbolic wave,
/// the sphere for the transform) are skipped.
void write_figure(const std::string& name, const GridSpec& grid, std::ostream& out);

/// Field value of a figure at a single point (the quantity written by write_figure).
double figure_value(const std::string& name, double x, double y);

}  // namespace fock::cli
