#include "besr/rates.hpp"

#include <cmath>

namespace besr {

static void require_pos(double v, const char* what) {
  if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}

double direct_rate(const RelaxationParams& p, double T) {
  require_pos(p.alpha_D, "alpha_D");
  require_pos(p.omega0, "omega0");
  require_pos(p.B0, "B0");
  require_pos(T, "temperature");
  const double coth = thermal_factor(ThermalKind::Coth, p.omega0, T);
  return p.alpha_D * p.omega0 * p.omega0 * p.omega0 * p.B0 * p.B0 * coth;
}

double mode_density(const RelaxationParams& p) {
  require_pos(p.omega0, "omega0");
  require_pos(p.v, "speed of sound");
  require_pos(p.gamma_inh, "gamma_inh");
  const double g = p.gamma_for_density();
  return 3.0 * p.omega0 * p.omega0 * g /
         (2.0 * consts::pi * consts::pi * p.v * p.v * p.v);
}

double bottleneck_rate(const RelaxationParams& p, double T) {
  require_pos(p.tau_ph, "tau_ph");
  require_pos(p.c, "spin density");
  require_pos(T, "temperature");
  const double coth = thermal_factor(ThermalKind::Coth, p.omega0, T);
  return (1.0 / p.tau_ph) * (mode_density(p) / p.c) * coth * coth;
}

double t1_slow_model(const TemperatureModelParams& mp, double T) {
  require_pos(mp.T1D0, "T1D0");
  if (mp.T1b0 < 0.0) throw std::domain_error("T1b0 must be >= 0");
  const double th = thermal_factor(ThermalKind::Tanh, mp.omega0, T);
  return mp.T1D0 * th + mp.T1b0 * th * th;
}

double flipflop_rate(const RelaxationParams& p, double T) {
  require_pos(p.c, "spin density");
  require_pos(p.gamma_inh, "gamma_inh");
  require_pos(p.xi, "xi");
  require_pos(p.alpha_ff, "alpha_ff");
  require_pos(T, "temperature");
  const double s2 = thermal_factor(ThermalKind::Sech2, p.omega0, T);
  return p.alpha_ff * p.c * p.c * p.xi / p.gamma_inh * s2;
}

double purcell_rate(double g0_cyclic, double kappa, double detuning) {
  require_pos(kappa, "kappa");
  const double g0 = 2.0 * consts::pi * g0_cyclic;
  return kappa * g0 * g0 / (0.25 * kappa * kappa + detuning * detuning);
}

double rabi_frequency(double g0_cyclic, double n_photons) {
  if (n_photons < 0.0) throw std::domain_error("photon number must be >= 0");
  return 2.0 * g0_cyclic * std::sqrt(n_photons);
}

double alpha_from_anchor(double T1_anchor, double B_anchor, double T_anchor,
                         double omega0) {
  require_pos(T1_anchor, "anchor T1");
  require_pos(B_anchor, "anchor field");
  require_pos(omega0, "omega0");
  const double coth = thermal_factor(ThermalKind::Coth, omega0, T_anchor);
  return 1.0 / (T1_anchor * omega0 * omega0 * omega0 * B_anchor * B_anchor * coth);
}

} // namespace besr
