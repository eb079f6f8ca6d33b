#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "besr/rates.hpp"

namespace besr {

// n = population-difference density N- minus N+ [m^-3],
// p = mean occupation of the resonant phonon band
struct BottleneckState {
  double n = 0.0;
  double p = 0.0;
};

struct SimulationPlan {
  RelaxationParams params;
  double T_bath = 0.0;               // K
  double W_p = 0.0;                  // s^-1, pump saturation rate
  double t_pump = 0.0;               // s
  std::vector<double> t_grid;        // s, measured from end of pump
  std::optional<BottleneckState> initial; // thermal when absent
  void validate() const;
};

struct SimTrace {
  std::vector<double> t, n, p;
  double n_eq = 0.0, p_th = 0.0, c = 0.0;
};

class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& msg, double t)
      : std::runtime_error(msg), t_fail(t) {}
  double t_fail;
};

BottleneckState equilibrium(const RelaxationParams& params, double T_bath);

// dn/dt = R0 [c - n(2p+1)] - W_p n
// dp/dt = R0 [c - n(2p+1)]/(2 rho) - (p - p_th)/tau_ph
// with R0 = alpha_D omega0^3 B0^2 the spontaneous per-spin rate
std::pair<double, double> step_equations(const BottleneckState& state,
                                         const RelaxationParams& params,
                                         double T_bath, double W_p);

SimTrace simulate(const SimulationPlan& plan);

// smallest-magnitude Jacobian eigenvalue at thermal equilibrium
double linearized_slow_rate(const RelaxationParams& params, double T_bath);

struct RepetitionResult {
  double excess = 0.0; // steady-state deficit before each shot, units of n_eq
  double T_eff = 0.0;  // K
};

// periodic pumping with inter-shot recovery exp(-t_rep/T_slow); depletion is
// the per-shot removed fraction of n_eq
RepetitionResult repetition_saturation(const RelaxationParams& params,
                                       double T_bath, double t_rep,
                                       double T_slow, double depletion = 1.0);

} // namespace besr
