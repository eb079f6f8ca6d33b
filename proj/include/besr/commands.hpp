#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "besr/config.hpp"

namespace besr {

// shared CLI surface: --out, --svg, --seed, --format
struct CliCommon {
  std::string out = ".";
  bool svg = false;
  std::uint64_t seed = 42;
  std::string format = "json"; // fit-result serialization: json or csv
};

struct SpectrumArgs {
  double b_min_mT = 0.0;
  double b_max_mT = 400.0;
  int n_points = 201;
  double theta_deg = 0.0;
};

struct AnglesArgs {
  double theta_min_deg = -90.0;
  double theta_max_deg = 90.0;
  int n_points = 181;
};

struct RatesArgs {
  std::string axis = "T"; // T or B
  double lo = 10.0;       // mK or mT depending on axis
  double hi = 400.0;
  int n_points = 60;
  bool log_grid = false;
};

struct SimulateArgs {
  std::optional<double> T_bath_mK, B_mT, W_p, t_pump, t_max;
  std::optional<int> n_points;
  std::optional<double> depth; // start from n = (1 - depth) n_eq instead of a pump
  bool with_fit = false;
};

struct FitArgs {
  std::string subkind; // decay | sweep | temperature | power
  std::string input;
  double theta_deg = 0.0; // sweep field-axis conversion
  bool signed_amplitudes = false; // decay: allow components of either sign
};

int cmd_spectrum(const Config& cfg, const CliCommon& common, const SpectrumArgs& a);
int cmd_angles(const Config& cfg, const CliCommon& common, const AnglesArgs& a);
int cmd_rates(const Config& cfg, const CliCommon& common, const RatesArgs& a);
int cmd_simulate(const Config& cfg, const CliCommon& common, const SimulateArgs& a);
int cmd_fit(const Config& cfg, const CliCommon& common, const FitArgs& a);
int cmd_reproduce(const Config& cfg, const CliCommon& common, const std::string& figure);
int cmd_validate_config(const Config& cfg);

} // namespace besr
