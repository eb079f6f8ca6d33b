#include "besr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace besr {

void SimulationPlan::validate() const {
  if (W_p < 0.0) throw std::domain_error("pump rate must be >= 0");
  if (t_pump < 0.0) throw std::domain_error("pump duration must be >= 0");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::domain_error("sample grid must be strictly increasing");
  if (initial && std::abs(initial->n) > params.c * (1.0 + 1e-12))
    throw std::domain_error("|n| exceeds spin density");
  if (initial && initial->p < 0.0)
    throw std::domain_error("phonon occupation must be >= 0");
}

BottleneckState equilibrium(const RelaxationParams& params, double T_bath) {
  if (!(T_bath > 0.0)) throw std::domain_error("bath temperature must be positive");
  const double x2 = consts::hbar * params.omega0 / (consts::k_B * T_bath);
  const double p_th = x2 > 700.0 ? 0.0 : 1.0 / std::expm1(x2);
  const double n_eq =
      params.c * thermal_factor(ThermalKind::Tanh, params.omega0, T_bath);
  return {n_eq, p_th};
}

namespace {

struct Coeffs {
  double R0, rho, tau_ph, c, p_th;
};

Coeffs coeffs(const RelaxationParams& params, double T_bath) {
  Coeffs co;
  co.R0 = params.alpha_D * params.omega0 * params.omega0 * params.omega0 *
          params.B0 * params.B0;
  co.rho = mode_density(params);
  co.tau_ph = params.tau_ph;
  co.c = params.c;
  co.p_th = equilibrium(params, T_bath).p;
  if (!(co.R0 > 0.0)) throw std::domain_error("spontaneous rate must be positive");
  if (!(co.tau_ph > 0.0)) throw std::domain_error("tau_ph must be positive");
  return co;
}

inline void deriv(const Coeffs& co, double W_p, double n, double p, double& dn,
                  double& dp) {
  const double exch = co.R0 * (co.c - n * (2.0 * p + 1.0));
  dn = exch - W_p * n;
  dp = exch / (2.0 * co.rho) - (p - co.p_th) / co.tau_ph;
}

inline void jacobian(const Coeffs& co, double W_p, double n, double p, double J[4]) {
  J[0] = -co.R0 * (2.0 * p + 1.0) - W_p;      // d dn/dn
  J[1] = -2.0 * co.R0 * n;                    // d dn/dp
  J[2] = -co.R0 * (2.0 * p + 1.0) / (2.0 * co.rho);
  J[3] = -co.R0 * n / co.rho - 1.0 / co.tau_ph;
}

double spectral_bound(const double J[4]) {
  const double tr = J[0] + J[3];
  const double det = J[0] * J[3] - J[1] * J[2];
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return std::max(std::abs(0.5 * (tr + s)), std::abs(0.5 * (tr - s)));
  }
  return 0.5 * std::hypot(tr, std::sqrt(-disc));
}

struct Integrator {
  Coeffs co;
  double W_p;
  double atol_n, atol_p;
  bool stiff = false;
  int stiff_streak = 0;
  double h = 0.0;

  static constexpr double rtol = 1e-8;

  double err_norm(double en, double ep, double n, double p, double nn, double np) const {
    const double sn = atol_n + rtol * std::max(std::abs(n), std::abs(nn));
    const double sp = atol_p + rtol * std::max(std::abs(p), std::abs(np));
    const double a = en / sn, b = ep / sp;
    return std::sqrt(0.5 * (a * a + b * b));
  }

  // Dormand-Prince 5(4) embedded pair
  bool rk_step(double& t, double& n, double& p, double t_end) {
    double k1n, k1p;
    deriv(co, W_p, n, p, k1n, k1p);
    if (h == 0.0) init_h(n, p, k1n, k1p, t_end - t);
    for (int attempt = 0; attempt < 200; ++attempt) {
      double hh = std::min(h, t_end - t);
      double k2n, k2p, k3n, k3p, k4n, k4p, k5n, k5p, k6n, k6p, k7n, k7p;
      deriv(co, W_p, n + hh * 0.2 * k1n, p + hh * 0.2 * k1p, k2n, k2p);
      deriv(co, W_p, n + hh * (3.0 / 40 * k1n + 9.0 / 40 * k2n),
            p + hh * (3.0 / 40 * k1p + 9.0 / 40 * k2p), k3n, k3p);
      deriv(co, W_p, n + hh * (44.0 / 45 * k1n - 56.0 / 15 * k2n + 32.0 / 9 * k3n),
            p + hh * (44.0 / 45 * k1p - 56.0 / 15 * k2p + 32.0 / 9 * k3p), k4n, k4p);
      deriv(co, W_p,
            n + hh * (19372.0 / 6561 * k1n - 25360.0 / 2187 * k2n +
                      64448.0 / 6561 * k3n - 212.0 / 729 * k4n),
            p + hh * (19372.0 / 6561 * k1p - 25360.0 / 2187 * k2p +
                      64448.0 / 6561 * k3p - 212.0 / 729 * k4p),
            k5n, k5p);
      deriv(co, W_p,
            n + hh * (9017.0 / 3168 * k1n - 355.0 / 33 * k2n + 46732.0 / 5247 * k3n +
                      49.0 / 176 * k4n - 5103.0 / 18656 * k5n),
            p + hh * (9017.0 / 3168 * k1p - 355.0 / 33 * k2p + 46732.0 / 5247 * k3p +
                      49.0 / 176 * k4p - 5103.0 / 18656 * k5p),
            k6n, k6p);
      const double yn = n + hh * (35.0 / 384 * k1n + 500.0 / 1113 * k3n +
                                  125.0 / 192 * k4n - 2187.0 / 6784 * k5n +
                                  11.0 / 84 * k6n);
      const double yp = p + hh * (35.0 / 384 * k1p + 500.0 / 1113 * k3p +
                                  125.0 / 192 * k4p - 2187.0 / 6784 * k5p +
                                  11.0 / 84 * k6p);
      deriv(co, W_p, yn, yp, k7n, k7p);
      const double en =
          hh * (71.0 / 57600 * k1n - 71.0 / 16695 * k3n + 71.0 / 1920 * k4n -
                17253.0 / 339200 * k5n + 22.0 / 525 * k6n - 1.0 / 40 * k7n);
      const double ep =
          hh * (71.0 / 57600 * k1p - 71.0 / 16695 * k3p + 71.0 / 1920 * k4p -
                17253.0 / 339200 * k5p + 22.0 / 525 * k6p - 1.0 / 40 * k7p);
      const double err = err_norm(en, ep, n, p, yn, yp);
      if (err <= 1.0 && std::isfinite(yn) && std::isfinite(yp)) {
        t += hh;
        n = yn;
        p = yp;
        double J[4];
        jacobian(co, W_p, n, p, J);
        const double lam = spectral_bound(J);
        stiff_streak = (hh * lam > 3.0) ? stiff_streak + 1 : 0;
        if (stiff_streak >= 15) stiff = true;
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h = hh * fac;
        return true;
      }
      const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
      h = hh * fac;
      if (h < 1e-14 * std::max(std::abs(t), std::abs(t_end)) + 1e-300)
        throw IntegratorError("step size underflow", t);
    }
    throw IntegratorError("step control failed to find acceptable step", t);
  }

  // Rosenbrock 2(3), L-stable, with the analytic Jacobian
  bool ros_step(double& t, double& n, double& p, double t_end) {
    static const double d = 1.0 / (2.0 + std::sqrt(2.0));
    static const double e32 = 6.0 + std::sqrt(2.0);
    double f0n, f0p;
    deriv(co, W_p, n, p, f0n, f0p);
    if (h == 0.0) init_h(n, p, f0n, f0p, t_end - t);
    double J[4];
    jacobian(co, W_p, n, p, J);
    for (int attempt = 0; attempt < 200; ++attempt) {
      double hh = std::min(h, t_end - t);
      // W = I - h d J, solved directly for the 2x2
      const double w00 = 1.0 - hh * d * J[0], w01 = -hh * d * J[1];
      const double w10 = -hh * d * J[2], w11 = 1.0 - hh * d * J[3];
      const double det = w00 * w11 - w01 * w10;
      auto solve = [&](double bx, double by, double& sx, double& sy) {
        sx = (w11 * bx - w01 * by) / det;
        sy = (w00 * by - w10 * bx) / det;
      };
      if (det == 0.0 || !std::isfinite(det)) {
        h = hh * 0.5;
        continue;
      }
      double k1n, k1p;
      solve(f0n, f0p, k1n, k1p);
      double f1n, f1p;
      deriv(co, W_p, n + 0.5 * hh * k1n, p + 0.5 * hh * k1p, f1n, f1p);
      double k2n, k2p;
      solve(f1n - k1n, f1p - k1p, k2n, k2p);
      k2n += k1n;
      k2p += k1p;
      const double yn = n + hh * k2n, yp = p + hh * k2p;
      double f2n, f2p;
      deriv(co, W_p, yn, yp, f2n, f2p);
      double k3n, k3p;
      solve(f2n - e32 * (k2n - f1n) - 2.0 * (k1n - f0n),
            f2p - e32 * (k2p - f1p) - 2.0 * (k1p - f0p), k3n, k3p);
      const double en = hh / 6.0 * (k1n - 2.0 * k2n + k3n);
      const double ep = hh / 6.0 * (k1p - 2.0 * k2p + k3p);
      const double err = err_norm(en, ep, n, p, yn, yp);
      if (err <= 1.0 && std::isfinite(yn) && std::isfinite(yp)) {
        t += hh;
        n = yn;
        p = yp;
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -1.0 / 3.0), 0.2, 5.0);
        h = hh * fac;
        return true;
      }
      const double fac = std::clamp(0.9 * std::pow(err, -1.0 / 3.0), 0.1, 1.0);
      h = hh * fac;
      if (h < 1e-14 * std::max(std::abs(t), std::abs(t_end)) + 1e-300)
        throw IntegratorError("step size underflow", t);
    }
    throw IntegratorError("step control failed to find acceptable step", t);
  }

  void init_h(double n, double p, double dn, double dp, double span) {
    const double sn = atol_n + rtol * std::abs(n);
    const double sp = atol_p + rtol * std::abs(p);
    const double rate = std::max(std::abs(dn) / sn, std::abs(dp) / sp);
    h = std::min(span, rate > 0.0 ? 0.01 / rate : span * 1e-3);
    if (!(h > 0.0)) h = span * 1e-6;
  }

  void advance_to(double& t, double& n, double& p, double t_end) {
    while (t < t_end) {
      if (stiff)
        ros_step(t, n, p, t_end);
      else
        rk_step(t, n, p, t_end);
    }
  }
};

} // namespace

std::pair<double, double> step_equations(const BottleneckState& state,
                                         const RelaxationParams& params,
                                         double T_bath, double W_p) {
  const Coeffs co = coeffs(params, T_bath);
  double dn, dp;
  deriv(co, W_p, state.n, state.p, dn, dp);
  return {dn, dp};
}

SimTrace simulate(const SimulationPlan& plan) {
  plan.validate();
  const Coeffs co = coeffs(plan.params, plan.T_bath);
  const BottleneckState eq = equilibrium(plan.params, plan.T_bath);

  Integrator ig;
  ig.co = co;
  ig.atol_n = 1e-12 * co.c;
  ig.atol_p = 1e-12 * std::max(1.0, co.c / (2.0 * co.rho));

  double n = plan.initial ? plan.initial->n : eq.n;
  double p = plan.initial ? plan.initial->p : eq.p;

  if (plan.t_pump > 0.0 && plan.W_p > 0.0) {
    ig.W_p = plan.W_p;
    double t = 0.0;
    ig.advance_to(t, n, p, plan.t_pump);
    ig.h = 0.0; // re-estimate for the recovery stage
    ig.stiff_streak = 0;
  }

  SimTrace out;
  out.n_eq = eq.n;
  out.p_th = eq.p;
  out.c = co.c;
  ig.W_p = 0.0;
  double t = 0.0;
  for (double ts : plan.t_grid) {
    if (ts > t) ig.advance_to(t, n, p, ts);
    out.t.push_back(ts);
    out.n.push_back(n);
    out.p.push_back(p);
  }
  return out;
}

double linearized_slow_rate(const RelaxationParams& params, double T_bath) {
  const Coeffs co = coeffs(params, T_bath);
  const BottleneckState eq = equilibrium(params, T_bath);
  double J[4];
  jacobian(co, 0.0, eq.n, eq.p, J);
  const double tr = J[0] + J[3];
  const double det = J[0] * J[3] - J[1] * J[2];
  const double disc = std::max(0.0, tr * tr - 4.0 * det);
  // both eigenvalues are real negative; compute the fast one first and the
  // slow one from the determinant to avoid cancellation
  const double lam_fast = 0.5 * (tr - std::sqrt(disc));
  const double lam_slow = det / lam_fast;
  return -lam_slow;
}

RepetitionResult repetition_saturation(const RelaxationParams& params,
                                       double T_bath, double t_rep,
                                       double T_slow, double depletion) {
  if (!(t_rep > 0.0)) throw std::domain_error("repetition time must be positive");
  if (!(T_slow > 0.0)) throw std::domain_error("recovery constant must be positive");
  if (depletion < 0.0 || depletion > 1.0)
    throw std::domain_error("per-shot depletion must be within [0,1]");
  const double f = std::exp(-t_rep / T_slow);
  RepetitionResult r;
  r.excess = std::min(1.0, depletion * f / (1.0 - f));
  const double th = thermal_factor(ThermalKind::Tanh, params.omega0, T_bath);
  const double y = (1.0 - r.excess) * th;
  if (y <= 0.0) {
    r.T_eff = std::numeric_limits<double>::infinity();
  } else {
    const double x_eff = std::atanh(y);
    r.T_eff = consts::hbar * params.omega0 / (2.0 * consts::k_B * x_eff);
  }
  return r;
}

} // namespace besr
