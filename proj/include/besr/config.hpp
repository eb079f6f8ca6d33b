#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "besr/hamiltonian.hpp"
#include "besr/rates.hpp"

namespace besr {

// carries "file:line: message" for anything wrong with a config file
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResonatorConfig {
  double f0_GHz = 0.0;
  double kappa_c_MHz = 0.0; // cyclic
  double kappa_i_MHz = 0.0; // cyclic

  double omega0() const; // rad/s
  double kappa_total() const; // rad/s
};

struct SimulationDefaults {
  double T_bath = 0.020; // K
  double B = 0.0;        // T; 0 falls back to the anchor field
  double W_p = 0.0;      // s^-1
  double t_pump = 0.0;   // s
  double t_max = 30.0;   // s
  int n_points = 200;
};

struct FitDefaults {
  int max_components = 3;
  double margin = 10.0;
};

struct Config {
  SpinSystem spin;
  ResonatorConfig resonator;
  double t1_anchor = 0.0; // s
  double b_anchor = 0.0;  // T
  double t_anchor = 0.0;  // K
  RelaxationParams relaxation; // derived: alpha_D from the anchor, tau_ph = d/v
  SimulationDefaults simulation;
  FitDefaults fit;
  std::uint64_t hash = 0; // FNV-1a of the normalized dump
};

// `section.key = value unit` lines; '#' starts a comment. Every key carries
// its unit suffix explicitly and unknown keys are rejected, both with line
// numbers. `name` labels diagnostics (usually the file path).
Config parse_config_text(const std::string& text, const std::string& name);
Config load_config(const std::string& path);

// canonical key = value unit listing (schema order, full precision)
std::string dump_config(const Config& c);

} // namespace besr
