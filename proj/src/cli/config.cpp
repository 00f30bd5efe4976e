#include <algorithm>
#include <fstream>
#include <sstream>

#include "fock/cli.hpp"

namespace fock::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a number, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key));
  if (out.empty()) throw ConfigError("config: key '" + key + "' expects a non-empty list");
  return out;
}

int parse_int(const std::string& text, const std::string& key) {
  const double v = parse_double(text, key);
  if (v != static_cast<int>(v)) throw ConfigError("config: key '" + key + "' expects an integer");
  return static_cast<int>(v);
}

void apply(CampaignConfig& c, const std::string& key, const std::string& value) {
  if (key == "d") {
    c.dims.clear();
    for (double v : parse_list(value, key)) {
      if (v != static_cast<int>(v)) throw ConfigError("config: key 'd' expects integers");
      c.dims.push_back(static_cast<int>(v));
    }
  } else if (key == "hbar") {
    c.hbars = parse_list(value, key);
  } else if (key == "lambda") {
    c.lambdas = parse_list(value, key);
  } else if (key == "l_max") {
    c.l_max = parse_int(value, key);
  } else if (key == "rho") {
    c.radii = parse_list(value, key);
  } else if (key == "random_points") {
    c.random_points = parse_int(value, key);
  } else if (key == "seed") {
    const double v = parse_double(value, key);
    if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) throw ConfigError("config: seed must be a non-negative integer");
    c.seed = static_cast<std::uint64_t>(v);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "tol_scale") {
    c.tol_scale = parse_double(value, key);
  } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
    c.tolerances[key.substr(4)] = parse_double(value, key);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

}  // namespace

std::string to_string(Suite s) {
  switch (s) {
    case Suite::lemma: return "lemma";
    case Suite::theorem: return "theorem";
    case Suite::repulsive: return "repulsive";
    case Suite::scattering: return "scattering";
    case Suite::moser: return "moser";
    case Suite::inversion: return "inversion";
    case Suite::figures: return "figures";
  }
  throw ConfigError("unknown suite");
}

Suite suite_from_string(const std::string& name) {
  for (Suite s : all_suites())
    if (to_string(s) == name) return s;
  throw ConfigError("unknown suite '" + name + "'");
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites{Suite::lemma,     Suite::theorem,   Suite::repulsive, Suite::scattering,
                                         Suite::moser,     Suite::inversion, Suite::figures};
  return suites;
}

double CampaignConfig::tolerance(const std::string& check, double fallback) const {
  const auto it = tolerances.find(check);
  return (it != tolerances.end() ? it->second : fallback) * tol_scale;
}

void CampaignConfig::validate() const {
  if (dims.empty() || hbars.empty() || lambdas.empty()) throw ConfigError("config: empty parameter grid");
  for (int d : dims)
    if (d != 2 && d != 3) throw ConfigError("config: d must be 2 or 3");
  for (double h : hbars)
    if (!(h > 0.0)) throw ConfigError("config: hbar must be positive");
  for (double l : lambdas)
    if (l == 0.0) throw ConfigError("config: lambda must be nonzero");
  for (double r : radii)
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("config: rho must lie in (0, 1)");
  if (l_max < 0) throw ConfigError("config: l_max must be >= 0");
  if (random_points < 1) throw ConfigError("config: random_points must be positive");
  if (!(tol_scale > 0.0)) throw ConfigError("config: tol_scale must be positive");
  for (const auto& [k, v] : tolerances)
    if (!(v > 0.0)) throw ConfigError("config: tolerance '" + k + "' must be positive");
  if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
}

CampaignConfig default_config(Suite suite) {
  CampaignConfig c;
  c.suite = suite;
  switch (suite) {
    case Suite::theorem:
      break;
    case Suite::repulsive:
      c.dims = {2};
      c.l_max = 2;
      break;
    case Suite::lemma:
      c.dims = {2};
      c.lambdas = {1.0};
      c.random_points = 20;
      break;
    case Suite::scattering:
      c.lambdas = {0.5, 1.0, 2.0};
      c.l_max = 6;
      break;
    case Suite::moser:
      c.random_points = 100;
      break;
    case Suite::inversion:
      c.random_points = 50;
      break;
    case Suite::figures:
      c.dims = {2};
      c.lambdas = {1.0};
      break;
  }
  return c;
}

CampaignConfig parse_config(std::istream& in, Suite suite) {
  CampaignConfig global = default_config(suite);
  std::vector<std::pair<std::string, std::string>> scoped;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config: malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      suite_from_string(section);  // rejects unknown sections
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: expected key=value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(lineno));
    if (section.empty()) {
      apply(global, key, value);
    } else if (section == to_string(suite)) {
      scoped.emplace_back(key, value);
    }
  }
  for (const auto& [k, v] : scoped) apply(global, k, v);
  global.validate();
  return global;
}

CampaignConfig load_config(const std::string& path, Suite suite) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in, suite);
}

}  // namespace fock::cli
