#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace besr {

enum class AxisKind { Time, Field, Temperature, AngularFrequency };

struct Trace {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> sigma; // empty = unweighted
  AxisKind axis = AxisKind::Time;
  void validate() const;
  bool weighted() const { return !sigma.empty(); }
};

struct FitParam {
  std::string name;
  double value = 0.0;
  double stderr_ = 0.0;
};

struct FitResult {
  std::string model_id;
  std::vector<FitParam> params;
  double chi2 = 0.0; // weighted when sigma present, else RSS
  double chi2_reduced = 0.0;
  int n_iter = 0;
  bool converged = false;
  double score = 0.0;
  bool degenerate = false;
  std::vector<std::string> notes;

  double param(const std::string& name) const;
  double stderr_of(const std::string& name) const;
  bool has(const std::string& name) const;
};

class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PeakNotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LMOptions {
  int max_iter = 500;
  double rel_step = 1e-6;  // central-difference Jacobian step
  double tol_param = 1e-10;
  double tol_grad = 1e-12;
  std::vector<double> lower, upper; // optional box bounds
};

// Core engine: minimize ||resid(p)||^2 by Levenberg-Marquardt. The residual
// functor owns any sigma scaling. Covariance of the returned solution is
// (J^T J)^-1 in the scaled residual metric.
struct LMSolution {
  Eigen::VectorXd p;
  Eigen::MatrixXd covariance;
  double cost = 0.0; // ||r||^2
  int n_iter = 0;
  bool converged = false;
};

LMSolution lm_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& resid,
                    const Eigen::VectorXd& p0, const LMOptions& opts = {});

// Scalar-model convenience wrapper over lm_solve
FitResult lm_fit(const std::function<double(const Eigen::VectorXd&, double)>& model,
                 const Trace& trace, const Eigen::VectorXd& p0,
                 const std::vector<std::string>& names,
                 const std::string& model_id, const LMOptions& opts = {});

// Weighted linear least squares, closed form; columns of X are basis functions
Eigen::VectorXd linear_lsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& w);

// y(t) = offset + sum_k A_k exp(-t/T_k); T_k reported ascending, weights as
// percent of sum A. Multi-start from 8 deterministic log-spaced constants.
FitResult fit_multiexp(const Trace& trace, int n_components, bool with_offset = true,
                       bool nonneg_amplitudes = true);

struct ModelOrderOptions {
  int max_components = 3;
  double margin = 10.0;
  bool nonneg_amplitudes = true;
};

std::pair<int, FitResult> select_model_order(const Trace& trace,
                                             const ModelOrderOptions& opts = {});

// kappa(omega) = baseline + g_ens^2 Gamma / ((omega-omega_s)^2 + (Gamma/2)^2).
// Field-axis traces are converted with slope g_eff mu_B / hbar. Inputs and
// reported parameters are cyclic MHz.
FitResult fit_lorentzian_kappa(const Trace& trace, double g_eff);

struct TemperatureModelOptions {
  bool share_T1D0 = true;  // joint fit across panels
  bool fix_T1b0_zero = false;
};

FitResult fit_temperature_model(const std::vector<Trace>& panels, double omega0,
                                const TemperatureModelOptions& opts = {});
FitResult fit_temperature_model(const Trace& trace, double omega0,
                                const TemperatureModelOptions& opts = {});

// log-log linear regression; exponent reported as |slope| with a note when it
// departs from quadratic field scaling
FitResult fit_power_law(const Trace& trace);

} // namespace besr
