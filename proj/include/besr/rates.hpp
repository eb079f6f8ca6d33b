#pragma once

#include "besr/physcore.hpp"

namespace besr {

enum class GammaConvention { Angular, Cyclic };

struct RelaxationParams {
  double alpha_D = 0.0;   // s^-1 (rad/s)^-3 T^-2
  double omega0 = 0.0;    // rad/s
  double B0 = 0.0;        // T
  double tau_ph = 0.0;    // s
  double v = 3000.0;      // m/s
  double c = 5.0e23;      // m^-3
  double gamma_inh = 0.0; // rad/s
  double d = 2.0e-4;      // m
  double xi = 0.0;        // 0 means default g_perp^4/20 applied at config load
  double alpha_ff = 1.0;
  GammaConvention gamma_convention = GammaConvention::Angular;

  // linewidth as it enters the mode-density prefactor
  double gamma_for_density() const {
    return gamma_convention == GammaConvention::Angular
               ? gamma_inh
               : gamma_inh / (2.0 * consts::pi);
  }
};

struct TemperatureModelParams {
  double T1D0 = 0.0; // s
  double T1b0 = 0.0; // s
  double omega0 = 0.0;
};

// 1/T_1D = alpha_D * omega0^3 * B0^2 * coth(x)
double direct_rate(const RelaxationParams& p, double T);

// resonant phonon-mode density 3 omega0^2 Gamma / (2 pi^2 v^3)
double mode_density(const RelaxationParams& p);

// 1/T_1b = (1/tau_ph) (rho/c) coth(x)^2
double bottleneck_rate(const RelaxationParams& p, double T);

// T_1^sl(T) = T1D0 tanh(x) + T1b0 tanh(x)^2
double t1_slow_model(const TemperatureModelParams& mp, double T);

// R_ff = alpha_ff c^2 Xi / Gamma_inh * sech(x)^2
double flipflop_rate(const RelaxationParams& p, double T);

// kappa g0^2 / ((kappa/2)^2 + delta^2); g0 cyclic on input, angular inside
double purcell_rate(double g0_cyclic, double kappa, double detuning);

double rabi_frequency(double g0_cyclic, double n_photons);

// alpha_D from an anchored (T1, B, T) measurement
double alpha_from_anchor(double T1_anchor, double B_anchor, double T_anchor,
                         double omega0);

} // namespace besr
