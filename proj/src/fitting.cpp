#include "besr/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "besr/physcore.hpp"

namespace besr {

void Trace::validate() const {
  if (x.size() != y.size()) throw std::invalid_argument("trace x/y length mismatch");
  if (!sigma.empty() && sigma.size() != x.size())
    throw std::invalid_argument("trace sigma length mismatch");
  for (size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw std::invalid_argument("trace abscissa must be strictly increasing");
  for (double s : sigma)
    if (!(s > 0.0)) throw std::invalid_argument("trace sigma must be positive");
}

double FitResult::param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return p.value;
  throw std::out_of_range("no fit parameter named " + name);
}

double FitResult::stderr_of(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return p.stderr_;
  throw std::out_of_range("no fit parameter named " + name);
}

bool FitResult::has(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return true;
  return false;
}

namespace {

Eigen::MatrixXd num_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& resid,
    const Eigen::VectorXd& p, double rel_step) {
  const int k = static_cast<int>(p.size());
  Eigen::VectorXd pp = p;
  Eigen::MatrixXd J;
  for (int j = 0; j < k; ++j) {
    double h = rel_step * std::abs(p(j));
    if (h < 1e-14) h = rel_step;
    pp(j) = p(j) + h;
    const Eigen::VectorXd rp = resid(pp);
    pp(j) = p(j) - h;
    const Eigen::VectorXd rm = resid(pp);
    pp(j) = p(j);
    if (J.size() == 0) J.resize(rp.size(), k);
    J.col(j) = (rp - rm) / (2.0 * h);
  }
  return J;
}

void clamp_to_bounds(Eigen::VectorXd& p, const LMOptions& o) {
  if (!o.lower.empty())
    for (int j = 0; j < p.size(); ++j)
      p(j) = std::max(p(j), o.lower[static_cast<size_t>(j)]);
  if (!o.upper.empty())
    for (int j = 0; j < p.size(); ++j)
      p(j) = std::min(p(j), o.upper[static_cast<size_t>(j)]);
}

} // namespace

LMSolution lm_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& resid,
                    const Eigen::VectorXd& p0, const LMOptions& opts) {
  Eigen::VectorXd p = p0;
  clamp_to_bounds(p, opts);
  Eigen::VectorXd r = resid(p);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  LMSolution sol;
  sol.converged = false;

  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    const Eigen::MatrixXd J = num_jacobian(resid, p, opts.rel_step);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() < opts.tol_grad) {
      sol.converged = true;
      break;
    }
    Eigen::VectorXd diag = JtJ.diagonal().cwiseMax(1e-30);
    bool stepped = false;
    for (int inner = 0; inner < 60; ++inner) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal() += lambda * diag;
      const Eigen::VectorXd delta = A.ldlt().solve(-g);
      if (!delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      Eigen::VectorXd pt = p + delta;
      clamp_to_bounds(pt, opts);
      const Eigen::VectorXd rt = resid(pt);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct <= cost) {
        const double rel = (pt - p).norm() / (p.norm() + 1e-300);
        p = pt;
        r = rt;
        cost = ct;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        if (rel < opts.tol_param) {
          sol.converged = true;
          iter++;
        }
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (sol.converged) break;
    if (!stepped) {
      // no descent direction at any damping: either converged or stuck
      sol.converged = g.lpNorm<Eigen::Infinity>() < 1e-6 * (1.0 + cost);
      break;
    }
  }

  sol.p = p;
  sol.cost = cost;
  sol.n_iter = iter;

  const Eigen::MatrixXd J = num_jacobian(resid, p, opts.rel_step);
  const Eigen::MatrixXd JtJ = J.transpose() * J;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(JtJ);
  lu.setThreshold(1e-12);
  if (lu.rank() < JtJ.rows())
    throw RankDeficiencyError("singular normal equations: parameters not independent");
  sol.covariance = lu.inverse();
  return sol;
}

FitResult lm_fit(const std::function<double(const Eigen::VectorXd&, double)>& model,
                 const Trace& trace, const Eigen::VectorXd& p0,
                 const std::vector<std::string>& names,
                 const std::string& model_id, const LMOptions& opts) {
  trace.validate();
  const int N = static_cast<int>(trace.x.size());
  const int k = static_cast<int>(p0.size());
  if (N < k) throw std::invalid_argument("fewer points than parameters");

  auto resid = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(N);
    for (int i = 0; i < N; ++i) {
      const double m = model(p, trace.x[static_cast<size_t>(i)]);
      const double s = trace.weighted() ? trace.sigma[static_cast<size_t>(i)] : 1.0;
      r(i) = (m - trace.y[static_cast<size_t>(i)]) / s;
    }
    return r;
  };

  const LMSolution sol = lm_solve(resid, p0, opts);

  FitResult out;
  out.model_id = model_id;
  out.chi2 = sol.cost;
  out.n_iter = sol.n_iter;
  out.converged = sol.converged;
  const int dof = std::max(1, N - k);
  out.chi2_reduced = sol.cost / dof;
  const double cov_scale = trace.weighted() ? 1.0 : sol.cost / dof;
  for (int j = 0; j < k; ++j) {
    FitParam fp;
    fp.name = names[static_cast<size_t>(j)];
    fp.value = sol.p(j);
    const double var = cov_scale * sol.covariance(j, j);
    fp.stderr_ = var > 0.0 ? std::sqrt(var) : 0.0;
    out.params.push_back(fp);
  }
  return out;
}

Eigen::VectorXd linear_lsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& w) {
  Eigen::MatrixXd Xw = X;
  Eigen::VectorXd yw = y;
  if (w.size() > 0) {
    for (int i = 0; i < X.rows(); ++i) {
      const double s = std::sqrt(w(i));
      Xw.row(i) *= s;
      yw(i) *= s;
    }
  }
  return Xw.colPivHouseholderQr().solve(yw);
}

namespace {

struct MultiexpSpace {
  int n = 0;
  bool offset = true;
  bool nonneg = true;
  // packing: [a_1..a_n, theta_1..theta_n, offset?] with T_k = exp(theta_k)
  double amplitude(const Eigen::VectorXd& q, int k) const {
    return nonneg ? std::abs(q(k)) : q(k);
  }
  double eval(const Eigen::VectorXd& q, double t) const {
    double y = offset ? q(2 * n) : 0.0;
    for (int k = 0; k < n; ++k)
      y += amplitude(q, k) * std::exp(-t / std::exp(q(n + k)));
    return y;
  }
  int dim() const { return 2 * n + (offset ? 1 : 0); }
};

double weighted_cost(const Trace& tr, const MultiexpSpace& sp,
                     const Eigen::VectorXd& q) {
  double c = 0.0;
  for (size_t i = 0; i < tr.x.size(); ++i) {
    const double s = tr.weighted() ? tr.sigma[i] : 1.0;
    const double r = (sp.eval(q, tr.x[i]) - tr.y[i]) / s;
    c += r * r;
  }
  return c;
}

Eigen::VectorXd init_amplitudes(const Trace& tr, const std::vector<double>& Ts,
                                bool offset, bool nonneg) {
  const int N = static_cast<int>(tr.x.size());
  const int n = static_cast<int>(Ts.size());
  Eigen::MatrixXd X(N, n + (offset ? 1 : 0));
  Eigen::VectorXd y(N), w(N);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < n; ++k)
      X(i, k) = std::exp(-tr.x[static_cast<size_t>(i)] / Ts[static_cast<size_t>(k)]);
    if (offset) X(i, n) = 1.0;
    y(i) = tr.y[static_cast<size_t>(i)];
    const double s = tr.weighted() ? tr.sigma[static_cast<size_t>(i)] : 1.0;
    w(i) = 1.0 / (s * s);
  }
  Eigen::VectorXd a = linear_lsq(X, y, w);
  if (nonneg)
    for (int k = 0; k < n; ++k) a(k) = std::max(a(k), 1e-9);
  return a;
}

} // namespace

FitResult fit_multiexp(const Trace& trace, int n_components, bool with_offset,
                       bool nonneg_amplitudes) {
  trace.validate();
  if (n_components < 0 || n_components > 3)
    throw std::invalid_argument("component count must be within 0..3");
  MultiexpSpace sp;
  sp.n = n_components;
  sp.offset = with_offset;
  sp.nonneg = nonneg_amplitudes;
  const int N = static_cast<int>(trace.x.size());
  if (N < sp.dim()) throw std::invalid_argument("fewer points than parameters");

  // the start ladder spans the positive part of the axis; a leading zero
  // sample carries no scale information
  const double xe = trace.x.back();
  double x1 = xe;
  for (double xv : trace.x)
    if (xv > 0.0 && xv < x1) x1 = xv;
  if (!(x1 > 0.0)) x1 = 1.0;

  auto resid = [&](const Eigen::VectorXd& q) {
    Eigen::VectorXd r(N);
    for (int i = 0; i < N; ++i) {
      const double s = trace.weighted() ? trace.sigma[static_cast<size_t>(i)] : 1.0;
      r(i) = (sp.eval(q, trace.x[static_cast<size_t>(i)]) -
              trace.y[static_cast<size_t>(i)]) / s;
    }
    return r;
  };

  LMOptions lopt;
  std::optional<LMSolution> best;

  if (n_components == 0) {
    Eigen::VectorXd q0(1);
    q0(0) = std::accumulate(trace.y.begin(), trace.y.end(), 0.0) / N;
    best = lm_solve(resid, q0, lopt);
  } else {
    for (int s = 1; s <= 8; ++s) {
      const double base = std::exp(std::log(x1) + std::log(xe / x1) * s / 9.0);
      std::vector<double> Ts;
      for (int j = 0; j < n_components; ++j) Ts.push_back(base * std::pow(8.0, j));
      const Eigen::VectorXd a = init_amplitudes(trace, Ts, with_offset, nonneg_amplitudes);
      Eigen::VectorXd q0(sp.dim());
      for (int k = 0; k < n_components; ++k) {
        q0(k) = a(k);
        q0(n_components + k) = std::log(Ts[static_cast<size_t>(k)]);
      }
      if (with_offset) q0(2 * n_components) = a(n_components);
      try {
        LMSolution sol = lm_solve(resid, q0, lopt);
        if (!best || sol.cost < best->cost) best = sol;
      } catch (const RankDeficiencyError&) {
        continue; // this start collapsed; other starts may not
      }
    }
    if (!best) throw RankDeficiencyError("all multiexponential starts degenerate");
  }

  const LMSolution& sol = *best;
  FitResult out;
  out.model_id = "multiexp" + std::to_string(n_components) +
                 (with_offset ? "+offset" : "");
  out.chi2 = sol.cost;
  out.n_iter = sol.n_iter;
  out.converged = sol.converged;
  const int dof = std::max(1, N - sp.dim());
  out.chi2_reduced = sol.cost / dof;
  const double cov_scale = trace.weighted() ? 1.0 : sol.cost / dof;

  // unpack ascending in T
  std::vector<int> order(static_cast<size_t>(n_components));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sol.p(n_components + a) < sol.p(n_components + b);
  });

  double asum = 0.0;
  for (int k = 0; k < n_components; ++k) asum += sp.amplitude(sol.p, k);

  for (int rank = 0; rank < n_components; ++rank) {
    const int k = order[static_cast<size_t>(rank)];
    const double T = std::exp(sol.p(n_components + k));
    const double A = sp.amplitude(sol.p, k);
    const double varT = cov_scale * sol.covariance(n_components + k, n_components + k);
    const double varA = cov_scale * sol.covariance(k, k);
    const std::string idx = std::to_string(rank + 1);
    out.params.push_back({"T" + idx, T, T * (varT > 0 ? std::sqrt(varT) : 0.0)});
    out.params.push_back({"A" + idx, A, varA > 0 ? std::sqrt(varA) : 0.0});
    out.params.push_back({"w" + idx, asum != 0.0 ? 100.0 * A / asum : 0.0, 0.0});
  }
  if (with_offset) {
    const int j = 2 * n_components;
    const double var = cov_scale * sol.covariance(j, j);
    out.params.push_back({"offset", sol.p(j), var > 0 ? std::sqrt(var) : 0.0});
  }

  for (int a = 0; a < n_components; ++a)
    for (int b = a + 1; b < n_components; ++b) {
      const double Ta = std::exp(sol.p(n_components + a));
      const double Tb = std::exp(sol.p(n_components + b));
      if (std::abs(Ta - Tb) <= 0.01 * std::max(Ta, Tb)) {
        out.degenerate = true;
        out.notes.push_back("time constants " + std::to_string(Ta) + " and " +
                            std::to_string(Tb) + " within 1%");
      }
    }
  return out;
}

std::pair<int, FitResult> select_model_order(const Trace& trace,
                                             const ModelOrderOptions& opts) {
  trace.validate();
  const int N = static_cast<int>(trace.x.size());
  std::vector<double> scores;
  std::vector<std::optional<FitResult>> fits;

  // residual floor at the engine's convergence scale: orders that both
  // describe the data essentially perfectly tie, and the smaller one wins
  double yscale = 0.0;
  for (double v : trace.y) yscale = std::max(yscale, std::abs(v));
  const double rss_floor = N * 1e-16 * yscale * yscale;

  for (int n = 0; n <= opts.max_components; ++n) {
    const int k = 2 * n + 1;
    if (N < k) {
      scores.push_back(std::numeric_limits<double>::infinity());
      fits.push_back(std::nullopt);
      continue;
    }
    try {
      FitResult f = fit_multiexp(trace, n, true, opts.nonneg_amplitudes);
      double score;
      if (trace.weighted()) {
        score = f.chi2 + 2.0 * k;
      } else {
        score = N * std::log(std::max(f.chi2, rss_floor) / N) + 2.0 * k;
      }
      f.score = score;
      scores.push_back(score);
      fits.push_back(std::move(f));
    } catch (const RankDeficiencyError&) {
      scores.push_back(std::numeric_limits<double>::infinity());
      fits.push_back(std::nullopt);
    }
  }

  int chosen = opts.max_components;
  for (int n = 0; n < opts.max_components; ++n) {
    if (!fits[static_cast<size_t>(n)]) continue;
    if (scores[static_cast<size_t>(n)] - scores[static_cast<size_t>(n) + 1] <=
        opts.margin) {
      chosen = n;
      break;
    }
  }
  while (chosen > 0 && !fits[static_cast<size_t>(chosen)]) --chosen;
  if (!fits[static_cast<size_t>(chosen)])
    throw RankDeficiencyError("no candidate model order could be fit");

  FitResult result = *fits[static_cast<size_t>(chosen)];
  if (chosen == 0)
    result.notes.push_back("no decay structure beyond a constant offset detected");
  return {chosen, result};
}

FitResult fit_lorentzian_kappa(const Trace& trace, double g_eff) {
  trace.validate();
  const int N = static_cast<int>(trace.x.size());
  if (N < 5) throw std::invalid_argument("too few points for a peak fit");

  // work in cyclic MHz on both axes
  std::vector<double> u(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double xi = trace.x[static_cast<size_t>(i)];
    if (trace.axis == AxisKind::Field) {
      const double w = g_eff * consts::mu_B * xi / consts::hbar; // rad/s
      u[static_cast<size_t>(i)] = w / (2.0 * consts::pi) * 1e-6;
    } else if (trace.axis == AxisKind::AngularFrequency) {
      u[static_cast<size_t>(i)] = xi / (2.0 * consts::pi) * 1e-6;
    } else {
      throw std::invalid_argument("peak fit expects a field or frequency axis");
    }
  }

  const auto& y = trace.y;
  const int tail = std::max(2, N / 10);
  std::vector<double> tails;
  for (int i = 0; i < tail; ++i) tails.push_back(y[static_cast<size_t>(i)]);
  for (int i = N - tail; i < N; ++i) tails.push_back(y[static_cast<size_t>(i)]);
  std::sort(tails.begin(), tails.end());
  const double base0 = tails[tails.size() / 2];
  double mean = 0.0;
  for (double v : tails) mean += v;
  mean /= tails.size();
  double var = 0.0;
  for (double v : tails) var += (v - mean) * (v - mean);
  double noise = std::sqrt(var / std::max<size_t>(1, tails.size() - 1));
  if (trace.weighted()) {
    noise = 0.0;
    for (double s : trace.sigma) noise += s;
    noise /= N;
  }

  int imax = 0;
  for (int i = 1; i < N; ++i)
    if (y[static_cast<size_t>(i)] > y[static_cast<size_t>(imax)]) imax = i;
  const double peak = y[static_cast<size_t>(imax)] - base0;
  if (!(peak > 3.0 * noise))
    throw PeakNotFoundError("peak below 3x the noise floor");

  const double half = base0 + 0.5 * peak;
  double lo = u[static_cast<size_t>(imax)], hi = u[static_cast<size_t>(imax)];
  for (int i = imax; i >= 0; --i)
    if (y[static_cast<size_t>(i)] >= half) lo = u[static_cast<size_t>(i)];
    else break;
  for (int i = imax; i < N; ++i)
    if (y[static_cast<size_t>(i)] >= half) hi = u[static_cast<size_t>(i)];
    else break;
  double gamma0 = std::max(hi - lo, (u.back() - u.front()) / N);
  const double g0 = std::sqrt(std::max(peak * gamma0 / 4.0, 1e-12));

  // q = [baseline, g_ens, gamma, center]; g_ens and gamma enter squared/abs
  auto model = [&](const Eigen::VectorXd& q, double uu) {
    const double g = q(1), gm = std::abs(q(2));
    const double dd = uu - q(3);
    return q(0) + g * g * gm / (dd * dd + 0.25 * gm * gm);
  };
  Trace tr;
  tr.x = u;
  tr.y = y;
  tr.sigma = trace.sigma;
  tr.axis = AxisKind::AngularFrequency;
  // u may be descending if field mapping flipped sign; enforce ordering
  if (tr.x.front() > tr.x.back()) {
    std::reverse(tr.x.begin(), tr.x.end());
    std::reverse(tr.y.begin(), tr.y.end());
    if (!tr.sigma.empty()) std::reverse(tr.sigma.begin(), tr.sigma.end());
  }

  Eigen::VectorXd q0(4);
  q0 << base0, g0, gamma0, u[static_cast<size_t>(imax)];
  FitResult out = lm_fit(model, tr, q0, {"baseline", "g_ens_MHz", "gamma_inh_MHz", "center_MHz"},
                         "lorentzian_kappa");
  for (auto& p : out.params) {
    if (p.name == "g_ens_MHz" || p.name == "gamma_inh_MHz") p.value = std::abs(p.value);
  }
  // stderr of g_ens follows from the squared parameterization directly
  if (trace.axis == AxisKind::Field) {
    const double slope = g_eff * consts::mu_B / consts::hbar / (2.0 * consts::pi) * 1e-6;
    out.params.push_back({"center_mT", out.param("center_MHz") / slope * 1e3, 0.0});
  }
  return out;
}

namespace {

double tanh_x(double omega0, double T) {
  return thermal_factor(ThermalKind::Tanh, omega0, T);
}

} // namespace

FitResult fit_temperature_model(const std::vector<Trace>& panels, double omega0,
                                const TemperatureModelOptions& opts) {
  if (panels.empty()) throw std::invalid_argument("no panels to fit");
  int Ntot = 0;
  for (const auto& tr : panels) {
    tr.validate();
    if (tr.x.size() < 4)
      throw std::invalid_argument("temperature fit needs at least 4 points");
    for (double T : tr.x)
      if (!(T > 0.0)) throw std::domain_error("temperatures must be positive");
    Ntot += static_cast<int>(tr.x.size());
  }
  const int m = static_cast<int>(panels.size());
  if (!opts.share_T1D0 && m != 1)
    throw std::invalid_argument("independent panels must be fit one at a time");

  // parameters: [T1D0, T1b0_1..T1b0_m] (T1b0 omitted when fixed to zero)
  const int k = opts.fix_T1b0_zero ? 1 : 1 + m;

  // initialize from per-panel linear least squares in the (tanh, tanh^2) basis
  double d0 = 0.0;
  std::vector<double> b0(static_cast<size_t>(m), 0.0);
  for (int j = 0; j < m; ++j) {
    const auto& tr = panels[static_cast<size_t>(j)];
    const int N = static_cast<int>(tr.x.size());
    Eigen::MatrixXd X(N, 2);
    Eigen::VectorXd yv(N), w(N);
    for (int i = 0; i < N; ++i) {
      const double th = tanh_x(omega0, tr.x[static_cast<size_t>(i)]);
      X(i, 0) = th;
      X(i, 1) = th * th;
      yv(i) = tr.y[static_cast<size_t>(i)];
      const double s = tr.weighted() ? tr.sigma[static_cast<size_t>(i)] : 1.0;
      w(i) = 1.0 / (s * s);
    }
    const Eigen::VectorXd ab = linear_lsq(X, yv, w);
    d0 += ab(0) / m;
    b0[static_cast<size_t>(j)] = ab(1);
  }

  // the model is linear in both prefactors, so the parameters stay signed; a
  // slightly negative estimate on bottleneck-free data is the honest answer,
  // and clamping it would zero out its Jacobian column
  auto resid = [&](const Eigen::VectorXd& q) {
    Eigen::VectorXd r(Ntot);
    int at = 0;
    for (int j = 0; j < m; ++j) {
      const auto& tr = panels[static_cast<size_t>(j)];
      const double T1D0 = q(0);
      const double T1b0 = opts.fix_T1b0_zero ? 0.0 : q(1 + j);
      for (size_t i = 0; i < tr.x.size(); ++i) {
        const double th = tanh_x(omega0, tr.x[i]);
        const double model = T1D0 * th + T1b0 * th * th;
        const double s = tr.weighted() ? tr.sigma[i] : 1.0;
        r(at++) = (model - tr.y[i]) / s;
      }
    }
    return r;
  };

  Eigen::VectorXd q0(k);
  q0(0) = d0;
  if (!opts.fix_T1b0_zero)
    for (int j = 0; j < m; ++j) q0(1 + j) = b0[static_cast<size_t>(j)];

  const LMSolution sol = lm_solve(resid, q0, {});
  const bool weighted = panels.front().weighted();
  const int dof = std::max(1, Ntot - k);
  const double cov_scale = weighted ? 1.0 : sol.cost / dof;

  FitResult out;
  out.model_id = opts.fix_T1b0_zero ? "t1_direct_only" : "t1_tanh_tanh2";
  out.chi2 = sol.cost;
  out.chi2_reduced = sol.cost / dof;
  out.n_iter = sol.n_iter;
  out.converged = sol.converged;
  auto push = [&](const std::string& name, int j) {
    const double var = cov_scale * sol.covariance(j, j);
    out.params.push_back({name, sol.p(j), var > 0 ? std::sqrt(var) : 0.0});
    if (sol.p(j) < 0.0) out.notes.push_back(name + " fitted negative");
  };
  push("T1D0", 0);
  if (!opts.fix_T1b0_zero) {
    if (m == 1) {
      push("T1b0", 1);
    } else {
      for (int j = 0; j < m; ++j) push("T1b0_" + std::to_string(j + 1), 1 + j);
    }
  }
  return out;
}

FitResult fit_temperature_model(const Trace& trace, double omega0,
                                const TemperatureModelOptions& opts) {
  return fit_temperature_model(std::vector<Trace>{trace}, omega0, opts);
}

FitResult fit_power_law(const Trace& trace) {
  trace.validate();
  const int N = static_cast<int>(trace.x.size());
  if (N < 2) throw std::invalid_argument("power-law fit needs at least 2 points");
  for (int i = 0; i < N; ++i)
    if (!(trace.x[static_cast<size_t>(i)] > 0.0) ||
        !(trace.y[static_cast<size_t>(i)] > 0.0))
      throw std::domain_error("power-law fit requires positive data");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < N; ++i) {
    const double lx = std::log(trace.x[static_cast<size_t>(i)]);
    const double ly = std::log(trace.y[static_cast<size_t>(i)]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = N * sxx - sx * sx;
  if (std::abs(denom) < 1e-300)
    throw std::domain_error("degenerate abscissa for power-law fit");
  const double slope = (N * sxy - sx * sy) / denom;
  const double icept = (sy - slope * sx) / N;

  double rss = 0.0;
  for (int i = 0; i < N; ++i) {
    const double lx = std::log(trace.x[static_cast<size_t>(i)]);
    const double ly = std::log(trace.y[static_cast<size_t>(i)]);
    const double r = ly - (icept + slope * lx);
    rss += r * r;
  }
  double se_slope = 0.0;
  if (N > 2) {
    const double s2 = rss / (N - 2);
    se_slope = std::sqrt(s2 * N / denom);
  }

  FitResult out;
  out.model_id = "power_law";
  out.converged = true;
  out.chi2 = rss;
  out.chi2_reduced = N > 2 ? rss / (N - 2) : 0.0;
  out.params.push_back({"exponent", std::abs(slope), se_slope});
  out.params.push_back({"slope", slope, se_slope});
  out.params.push_back({"prefactor", std::exp(icept), 0.0});
  if (std::abs(std::abs(slope) - 2.0) > 0.1)
    out.notes.push_back("exponent deviates from quadratic field scaling");
  return out;
}

} // namespace besr
