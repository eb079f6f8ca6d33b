#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "besr/commands.hpp"
#include "besr/csvio.hpp"
#include "besr/dynamics.hpp"
#include "besr/fitting.hpp"

using namespace besr;

namespace {

struct CommonFlags {
  std::string config_path;
  CliCommon common;
};

void add_common(CLI::App* sub, CommonFlags& cf) {
  sub->add_option("--config", cf.config_path, "configuration file")->required();
  sub->add_option("--out", cf.common.out, "output directory");
  sub->add_flag("--svg", cf.common.svg, "also write SVG plots");
  sub->add_option("--seed", cf.common.seed, "seed for synthetic noise");
  sub->add_option("--format", cf.common.format, "fit result format")
      ->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-resonator relaxation toolkit"};
  app.require_subcommand(1);

  CommonFlags cf;

  auto* sp = app.add_subcommand("spectrum", "level diagram vs field");
  SpectrumArgs spa;
  add_common(sp, cf);
  sp->add_option("--b-min", spa.b_min_mT, "field start [mT]");
  sp->add_option("--b-max", spa.b_max_mT, "field end [mT]");
  sp->add_option("--points", spa.n_points, "grid size")->check(CLI::PositiveNumber);
  sp->add_option("--theta", spa.theta_deg, "angle from the c axis [deg]");

  auto* an = app.add_subcommand("angles", "resonance field vs orientation");
  AnglesArgs ana;
  add_common(an, cf);
  an->add_option("--theta-min", ana.theta_min_deg, "angle start [deg]");
  an->add_option("--theta-max", ana.theta_max_deg, "angle end [deg]");
  an->add_option("--points", ana.n_points, "grid size")->check(CLI::PositiveNumber);

  auto* ra = app.add_subcommand("rates", "relaxation-time table over a sweep");
  RatesArgs raa;
  add_common(ra, cf);
  ra->add_option("--axis", raa.axis, "sweep axis: T [mK] or B [mT]")
      ->check(CLI::IsMember({"T", "B"}));
  ra->add_option("--min", raa.lo, "axis start");
  ra->add_option("--max", raa.hi, "axis end");
  ra->add_option("--points", raa.n_points, "grid size")->check(CLI::PositiveNumber);
  ra->add_flag("--log", raa.log_grid, "geometric grid");

  auto* si = app.add_subcommand("simulate", "bottleneck rate-equation recovery");
  SimulateArgs sia;
  add_common(si, cf);
  si->add_option("--t-bath", sia.T_bath_mK, "bath temperature [mK]");
  si->add_option("--field", sia.B_mT, "static field [mT]");
  si->add_option("--pump-rate", sia.W_p, "pump saturation rate [1/s]");
  si->add_option("--pump-duration", sia.t_pump, "pump length [s]");
  si->add_option("--t-max", sia.t_max, "trace horizon [s]");
  si->add_option("--points", sia.n_points, "trace samples")->check(CLI::PositiveNumber);
  si->add_option("--depth", sia.depth, "start from n = (1-depth) n_eq");
  si->add_flag("--fit", sia.with_fit, "fit the recovery and write a JSON sidecar");

  auto* fi = app.add_subcommand("fit", "fit a measured or synthetic data file");
  FitArgs fia;
  add_common(fi, cf);
  fi->add_option("kind", fia.subkind, "decay | sweep | temperature | power")
      ->required();
  fi->add_option("--input", fia.input, "input CSV")->required();
  fi->add_option("--theta", fia.theta_deg, "field-axis angle [deg]");
  fi->add_flag("--signed", fia.signed_amplitudes,
               "decay: allow negative amplitudes (inversion recovery)");

  auto* re = app.add_subcommand("reproduce", "figure bundle pipelines");
  std::string figure;
  add_common(re, cf);
  re->add_option("figure", figure, "fig2a | fig2c | fig3b | fig4")->required();

  auto* va = app.add_subcommand("validate-config", "parse and echo a config");
  add_common(va, cf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Config cfg = load_config(cf.config_path);
    if (sp->parsed()) return cmd_spectrum(cfg, cf.common, spa);
    if (an->parsed()) return cmd_angles(cfg, cf.common, ana);
    if (ra->parsed()) return cmd_rates(cfg, cf.common, raa);
    if (si->parsed()) return cmd_simulate(cfg, cf.common, sia);
    if (fi->parsed()) return cmd_fit(cfg, cf.common, fia);
    if (re->parsed()) return cmd_reproduce(cfg, cf.common, figure);
    if (va->parsed()) return cmd_validate_config(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CsvError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const PeakNotFoundError& e) {
    std::cerr << "fit failed: " << e.what() << "\n";
    return 3;
  } catch (const RankDeficiencyError& e) {
    std::cerr << "fit failed: " << e.what() << "\n";
    return 3;
  } catch (const IntegratorError& e) {
    std::cerr << "integrator failure at t = " << e.t_fail << " s: " << e.what()
              << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
