#include "besr/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace besr {

double ResonatorConfig::omega0() const {
  return 2.0 * consts::pi * f0_GHz * 1e9;
}

double ResonatorConfig::kappa_total() const {
  return 2.0 * consts::pi * (kappa_c_MHz + kappa_i_MHz) * 1e6;
}

namespace {

struct SchemaEntry {
  const char* key;
  const char* unit;
  bool required;
  double fallback;
};

// the unit column is part of the contract: a bare number is a parse error
const std::vector<SchemaEntry>& schema() {
  static const std::vector<SchemaEntry> s = {
      {"spin.g_perp", "dimensionless", true, 0.0},
      {"spin.g_par", "dimensionless", true, 0.0},
      {"spin.nuclear_spin", "dimensionless", false, 0.0},
      {"spin.hyperfine_A_perp", "MHz", false, -873.0},
      {"spin.hyperfine_A_par", "MHz", false, -130.0},
      {"resonator.f0", "GHz", true, 0.0},
      {"resonator.kappa_c", "MHz", true, 0.0},
      {"resonator.kappa_i", "MHz", true, 0.0},
      {"relaxation.t1_anchor", "s", true, 0.0},
      {"relaxation.b_anchor", "mT", true, 0.0},
      {"relaxation.t_anchor", "mK", true, 0.0},
      {"relaxation.sound_velocity", "m/s", true, 0.0},
      {"relaxation.concentration", "cm^-3", true, 0.0},
      {"relaxation.crystal_thickness", "mm", true, 0.0},
      {"relaxation.gamma_inh", "MHz", true, 0.0},
      {"relaxation.xi", "dimensionless", false, 0.0},
      {"simulation.T_bath", "mK", false, 20.0},
      {"simulation.B", "mT", false, 0.0},
      {"simulation.W_p", "1/s", false, 0.0},
      {"simulation.t_pump", "s", false, 0.0},
      {"simulation.t_max", "s", false, 30.0},
      {"simulation.n_points", "dimensionless", false, 200.0},
      {"fit.max_components", "dimensionless", false, 3.0},
      {"fit.margin", "dimensionless", false, 10.0},
  };
  return s;
}

const SchemaEntry* find_entry(const std::string& key) {
  for (const auto& e : schema())
    if (key == e.key) return &e;
  return nullptr;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void check_positive(const std::string& key, double v) {
  if (!(v > 0.0))
    throw ConfigError("config value for " + key + " must be positive");
}

} // namespace

Config parse_config_text(const std::string& text, const std::string& name) {
  std::map<std::string, double> values;
  std::map<std::string, int> seen_at;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(name, lineno, "expected 'section.key = value unit'");
    const std::string key = trim(line.substr(0, eq));
    const std::string rhs = trim(line.substr(eq + 1));
    if (key.empty() || std::count(key.begin(), key.end(), '.') != 1)
      fail(name, lineno, "key must look like 'section.key', got '" + key + "'");

    const SchemaEntry* entry = find_entry(key);
    if (!entry) fail(name, lineno, "unknown key '" + key + "'");
    if (seen_at.count(key))
      fail(name, lineno, "duplicate key '" + key + "' (first at line " +
                             std::to_string(seen_at[key]) + ")");

    std::istringstream rs(rhs);
    std::string value_tok, unit_tok, extra;
    rs >> value_tok >> unit_tok;
    if (value_tok.empty()) fail(name, lineno, "missing value for '" + key + "'");
    if (unit_tok.empty())
      fail(name, lineno, "missing unit suffix for '" + key + "' (expected '" +
                             entry->unit + "')");
    if (rs >> extra) fail(name, lineno, "trailing text '" + extra + "'");
    if (unit_tok != entry->unit)
      fail(name, lineno, "expected unit '" + std::string(entry->unit) +
                             "' for '" + key + "', got '" + unit_tok + "'");

    char* end = nullptr;
    const double v = std::strtod(value_tok.c_str(), &end);
    if (end != value_tok.c_str() + value_tok.size() || !std::isfinite(v))
      fail(name, lineno, "invalid number '" + value_tok + "'");

    values[key] = v;
    seen_at[key] = lineno;
  }

  for (const auto& e : schema()) {
    if (values.count(e.key)) continue;
    if (e.required)
      throw ConfigError(name + ": missing required key '" + std::string(e.key) + "'");
    values[e.key] = e.fallback;
  }

  Config c;
  c.spin.g_perp = values["spin.g_perp"];
  c.spin.g_par = values["spin.g_par"];
  c.spin.nuclear_spin = values["spin.nuclear_spin"];
  c.spin.hyperfine_A_perp = values["spin.hyperfine_A_perp"];
  c.spin.hyperfine_A_par = values["spin.hyperfine_A_par"];

  c.resonator.f0_GHz = values["resonator.f0"];
  c.resonator.kappa_c_MHz = values["resonator.kappa_c"];
  c.resonator.kappa_i_MHz = values["resonator.kappa_i"];
  check_positive("resonator.f0", c.resonator.f0_GHz);
  check_positive("resonator.kappa_c", c.resonator.kappa_c_MHz);
  check_positive("resonator.kappa_i", c.resonator.kappa_i_MHz);

  c.t1_anchor = values["relaxation.t1_anchor"];
  c.b_anchor = values["relaxation.b_anchor"] * 1e-3;
  c.t_anchor = values["relaxation.t_anchor"] * 1e-3;
  check_positive("relaxation.t1_anchor", c.t1_anchor);
  check_positive("relaxation.b_anchor", c.b_anchor);
  check_positive("relaxation.t_anchor", c.t_anchor);

  const double v_s = values["relaxation.sound_velocity"];
  const double conc = values["relaxation.concentration"] * 1e6; // to m^-3
  const double d = values["relaxation.crystal_thickness"] * 1e-3;
  const double gamma_MHz = values["relaxation.gamma_inh"];
  check_positive("relaxation.sound_velocity", v_s);
  check_positive("relaxation.concentration", conc);
  check_positive("relaxation.crystal_thickness", d);
  check_positive("relaxation.gamma_inh", gamma_MHz);

  c.spin.spin_density = conc;
  c.spin.validate();

  RelaxationParams& p = c.relaxation;
  p.omega0 = c.resonator.omega0();
  p.B0 = c.b_anchor;
  p.v = v_s;
  p.c = conc;
  p.d = d;
  p.tau_ph = d / v_s;
  p.gamma_inh = 2.0 * consts::pi * gamma_MHz * 1e6;
  p.gamma_convention = GammaConvention::Angular;
  p.xi = values["relaxation.xi"] > 0.0 ? values["relaxation.xi"]
                                       : std::pow(c.spin.g_perp, 4) / 20.0;
  p.alpha_D = alpha_from_anchor(c.t1_anchor, c.b_anchor, c.t_anchor, p.omega0);

  c.simulation.T_bath = values["simulation.T_bath"] * 1e-3;
  c.simulation.B = values["simulation.B"] * 1e-3;
  c.simulation.W_p = values["simulation.W_p"];
  c.simulation.t_pump = values["simulation.t_pump"];
  c.simulation.t_max = values["simulation.t_max"];
  c.simulation.n_points = static_cast<int>(values["simulation.n_points"]);
  check_positive("simulation.T_bath", c.simulation.T_bath);
  check_positive("simulation.t_max", c.simulation.t_max);
  if (c.simulation.W_p < 0.0 || c.simulation.t_pump < 0.0)
    throw ConfigError("pump settings must be non-negative");
  if (c.simulation.n_points < 2)
    throw ConfigError("simulation.n_points must be at least 2");
  if (c.simulation.B == 0.0) c.simulation.B = c.b_anchor;

  c.fit.max_components = static_cast<int>(values["fit.max_components"]);
  c.fit.margin = values["fit.margin"];
  if (c.fit.max_components < 0 || c.fit.max_components > 3)
    throw ConfigError("fit.max_components must be within 0..3");
  if (c.fit.margin < 0.0) throw ConfigError("fit.margin must be non-negative");

  c.hash = fnv1a64(dump_config(c));
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string dump_config(const Config& c) {
  // values go back out in schema units so a dump reloads identically
  std::map<std::string, double> values = {
      {"spin.g_perp", c.spin.g_perp},
      {"spin.g_par", c.spin.g_par},
      {"spin.nuclear_spin", c.spin.nuclear_spin},
      {"spin.hyperfine_A_perp", c.spin.hyperfine_A_perp},
      {"spin.hyperfine_A_par", c.spin.hyperfine_A_par},
      {"resonator.f0", c.resonator.f0_GHz},
      {"resonator.kappa_c", c.resonator.kappa_c_MHz},
      {"resonator.kappa_i", c.resonator.kappa_i_MHz},
      {"relaxation.t1_anchor", c.t1_anchor},
      {"relaxation.b_anchor", c.b_anchor * 1e3},
      {"relaxation.t_anchor", c.t_anchor * 1e3},
      {"relaxation.sound_velocity", c.relaxation.v},
      {"relaxation.concentration", c.relaxation.c * 1e-6},
      {"relaxation.crystal_thickness", c.relaxation.d * 1e3},
      {"relaxation.gamma_inh", c.relaxation.gamma_inh / (2.0 * consts::pi) * 1e-6},
      {"relaxation.xi", c.relaxation.xi},
      {"simulation.T_bath", c.simulation.T_bath * 1e3},
      {"simulation.B", c.simulation.B * 1e3},
      {"simulation.W_p", c.simulation.W_p},
      {"simulation.t_pump", c.simulation.t_pump},
      {"simulation.t_max", c.simulation.t_max},
      {"simulation.n_points", static_cast<double>(c.simulation.n_points)},
      {"fit.max_components", static_cast<double>(c.fit.max_components)},
      {"fit.margin", c.fit.margin},
  };
  std::string out;
  char buf[64];
  for (const auto& e : schema()) {
    std::snprintf(buf, sizeof buf, "%.17g", values[e.key]);
    out += std::string(e.key) + " = " + buf + " " + e.unit + "\n";
  }
  return out;
}

} // namespace besr
