#include "besr/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <vector>

#include <json.hpp>

#include "besr/csvio.hpp"
#include "besr/dynamics.hpp"
#include "besr/fitting.hpp"
#include "besr/rng.hpp"
#include "besr/svg.hpp"

namespace besr {

namespace {

namespace fs = std::filesystem;

std::string out_path(const CliCommon& common, const std::string& name) {
  return (fs::path(common.out) / name).string();
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void stamp(Table& t, const Config& cfg, const CliCommon& common) {
  t.meta.emplace_back("config_hash", hash_hex(cfg.hash));
  t.meta.emplace_back("seed", std::to_string(common.seed));
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  if (n <= 1 || a == b) {
    g.push_back(a);
    return g;
  }
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / double(n - 1));
  return g;
}

std::vector<double> geomspace(double a, double b, int n) {
  std::vector<double> g;
  if (n <= 1 || a == b) {
    g.push_back(a);
    return g;
  }
  for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, i / double(n - 1)));
  return g;
}

nlohmann::json fit_to_json(const FitResult& f, const Config& cfg,
                           const CliCommon& common) {
  nlohmann::json j;
  j["model_id"] = f.model_id;
  j["converged"] = f.converged;
  j["n_iter"] = f.n_iter;
  j["chi2"] = f.chi2;
  j["chi2_reduced"] = f.chi2_reduced;
  j["score"] = f.score;
  j["degenerate"] = f.degenerate;
  j["params"] = nlohmann::json::array();
  for (const auto& p : f.params)
    j["params"].push_back({{"name", p.name}, {"value", p.value}, {"stderr", p.stderr_}});
  j["notes"] = f.notes;
  j["provenance"] = {{"config_hash", hash_hex(cfg.hash)}, {"seed", common.seed}};
  return j;
}

void write_fit_result(const std::string& base, const FitResult& f,
                      const Config& cfg, const CliCommon& common) {
  if (common.format == "csv") {
    std::string out;
    out += "# config_hash = " + hash_hex(cfg.hash) + "\n";
    out += "# seed = " + std::to_string(common.seed) + "\n";
    out += "# model_id = " + f.model_id + "\n";
    out += "# converged = " + std::string(f.converged ? "1" : "0") + "\n";
    out += "param,value,stderr\n";
    for (const auto& p : f.params)
      out += p.name + "," + num(p.value) + "," + num(p.stderr_) + "\n";
    write_text_atomic(base + ".csv", out);
  } else {
    write_text_atomic(base + ".json", fit_to_json(f, cfg, common).dump(2) + "\n");
  }
}

double deg2rad(double d) { return d * consts::pi / 180.0; }

// the per-temperature slow-relaxation model implied by a parameter set
TemperatureModelParams model_from_params(const RelaxationParams& p) {
  TemperatureModelParams mp;
  mp.omega0 = p.omega0;
  mp.T1D0 = 1.0 / (p.alpha_D * p.omega0 * p.omega0 * p.omega0 * p.B0 * p.B0);
  mp.T1b0 = p.tau_ph * p.c / mode_density(p);
  return mp;
}

} // namespace

int cmd_spectrum(const Config& cfg, const CliCommon& common, const SpectrumArgs& a) {
  const double th = deg2rad(a.theta_deg);
  const double omega0 = cfg.resonator.omega0();

  SpinSystem even = cfg.spin;
  even.nuclear_spin = 0.0;
  const bool with_odd = cfg.spin.nuclear_spin > 0.0;
  SpinSystem odd = cfg.spin;

  std::vector<double> Bs;
  if (a.b_min_mT == a.b_max_mT)
    Bs.push_back(a.b_min_mT);
  else
    Bs = linspace(a.b_min_mT, a.b_max_mT, a.n_points);

  Table t;
  stamp(t, cfg, common);
  t.meta.emplace_back("theta_deg", num(a.theta_deg));
  t.meta.emplace_back("f0_GHz", num(cfg.resonator.f0_GHz));
  t.columns = {"B_mT", "even_E1_GHz", "even_E2_GHz"};
  if (with_odd)
    for (int k = 1; k <= odd.dim(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "odd167_E%02d_GHz", k);
      t.columns.push_back(name);
    }

  for (double BmT : Bs) {
    std::vector<double> row = {BmT};
    LevelDiagram le = diagonalize(build_hamiltonian(even, {BmT * 1e-3, th}));
    for (int k = 0; k < le.energies.size(); ++k) row.push_back(le.energies(k));
    if (with_odd) {
      LevelDiagram lo = diagonalize(build_hamiltonian(odd, {BmT * 1e-3, th}));
      for (int k = 0; k < lo.energies.size(); ++k) row.push_back(lo.energies(k));
    }
    t.rows.push_back(std::move(row));
  }
  write_csv(out_path(common, "spectrum.csv"), t);

  // resonance markers where a transition crosses the resonator frequency
  Table m;
  stamp(m, cfg, common);
  m.columns = {"B0_mT", "frequency_GHz", "nuclear_spin_x2", "two_m_I"};
  const double b_lo = std::max(a.b_min_mT, 0.1) * 1e-3;
  const double b_hi = std::max(a.b_max_mT * 1e-3, b_lo * 1.001);
  for (const auto& [B0, tr] : resonance_fields(even, th, omega0, b_lo, b_hi))
    m.add_row({B0 * 1e3, tr.frequency, 0.0, 0.0});
  if (with_odd)
    for (const auto& [B0, tr] : resonance_fields(odd, th, omega0, b_lo, b_hi))
      if (tr.label)
        m.add_row({B0 * 1e3, tr.frequency, 7.0, 2.0 * *tr.label});
  write_csv(out_path(common, "spectrum_markers.csv"), m);

  if (common.svg) {
    std::vector<SvgSeries> series;
    for (size_t c = 1; c < t.columns.size(); ++c) {
      SvgSeries s;
      if (c <= 2) s.label = t.columns[c];
      for (const auto& row : t.rows) s.pts.push_back({row[0], row[c]});
      series.push_back(std::move(s));
    }
    SvgSeries marks;
    marks.label = "f0 crossings";
    marks.markers = true;
    for (const auto& row : m.rows) marks.pts.push_back({row[0], row[1]});
    series.push_back(std::move(marks));
    write_svg_plot(out_path(common, "spectrum.svg"),
                   {"level diagram", "B (mT)", "E (GHz)"}, series);
  }
  return 0;
}

int cmd_angles(const Config& cfg, const CliCommon& common, const AnglesArgs& a) {
  const double omega0 = cfg.resonator.omega0();
  SpinSystem even = cfg.spin;
  even.nuclear_spin = 0.0;
  const double proj0 = drive_projection(even, 0.0);

  Table t;
  stamp(t, cfg, common);
  t.columns = {"theta_deg", "B0_mT", "g_ens_rel"};
  for (double deg : linspace(a.theta_min_deg, a.theta_max_deg, a.n_points)) {
    const double th = deg2rad(deg);
    const auto res = resonance_fields(even, th, omega0, 1e-4, 1.0);
    if (res.empty()) continue;
    t.add_row({deg, res.front().first * 1e3, drive_projection(even, th) / proj0});
  }
  write_csv(out_path(common, "angles.csv"), t);

  if (common.svg) {
    SvgSeries s;
    s.label = "resonance field";
    for (const auto& row : t.rows) s.pts.push_back({row[0], row[1]});
    write_svg_plot(out_path(common, "angles.svg"),
                   {"angular dependence", "theta (deg)", "B0 (mT)"}, {s});
  }
  return 0;
}

int cmd_rates(const Config& cfg, const CliCommon& common, const RatesArgs& a) {
  if (a.axis != "T" && a.axis != "B")
    throw std::invalid_argument("rates axis must be T or B");
  if (!(a.hi > a.lo) || a.n_points < 2)
    throw std::invalid_argument("rates grid must have hi > lo and at least 2 points");

  RelaxationParams p = cfg.relaxation;
  p.B0 = cfg.simulation.B;

  const std::vector<double> grid = a.log_grid ? geomspace(a.lo, a.hi, a.n_points)
                                              : linspace(a.lo, a.hi, a.n_points);
  Table t;
  stamp(t, cfg, common);
  t.columns = {a.axis == "T" ? "T_mK" : "B_mT", "T1D_s", "T1b_s", "T1_slow_s",
               "R_ff_per_s"};
  for (double g : grid) {
    double T = cfg.simulation.T_bath;
    if (a.axis == "T")
      T = g * 1e-3;
    else
      p.B0 = g * 1e-3;
    const TemperatureModelParams mp = model_from_params(p);
    t.add_row({g, 1.0 / direct_rate(p, T), 1.0 / bottleneck_rate(p, T),
               t1_slow_model(mp, T), flipflop_rate(p, T)});
  }
  write_csv(out_path(common, "rates.csv"), t);

  if (common.svg) {
    std::vector<SvgSeries> series(3);
    series[0].label = "T1 direct";
    series[1].label = "T1 bottleneck";
    series[2].label = "T1 slow";
    for (const auto& row : t.rows)
      for (int k = 0; k < 3; ++k) series[size_t(k)].pts.push_back({row[0], row[size_t(k) + 1]});
    SvgOptions so{"relaxation times", a.axis == "T" ? "T (mK)" : "B (mT)",
                  "time (s)"};
    so.logy = true;
    so.logx = a.log_grid;
    write_svg_plot(out_path(common, "rates.svg"), so, series);
  }
  return 0;
}

int cmd_simulate(const Config& cfg, const CliCommon& common, const SimulateArgs& a) {
  SimulationPlan plan;
  plan.params = cfg.relaxation;
  plan.params.B0 = a.B_mT ? *a.B_mT * 1e-3 : cfg.simulation.B;
  plan.T_bath = a.T_bath_mK ? *a.T_bath_mK * 1e-3 : cfg.simulation.T_bath;
  plan.W_p = a.W_p.value_or(cfg.simulation.W_p);
  plan.t_pump = a.t_pump.value_or(cfg.simulation.t_pump);
  const double t_max = a.t_max.value_or(cfg.simulation.t_max);
  const int n_points = a.n_points.value_or(cfg.simulation.n_points);
  if (n_points < 2 || !(t_max > 0.0))
    throw std::invalid_argument("simulate needs t_max > 0 and at least 2 points");

  if (a.depth) {
    if (plan.W_p > 0.0 || plan.t_pump > 0.0)
      throw std::invalid_argument("depth start and pump settings are exclusive");
    if (!(*a.depth >= 0.0 && *a.depth <= 1.0))
      throw std::invalid_argument("depth must lie in [0, 1]");
    const BottleneckState eq = equilibrium(plan.params, plan.T_bath);
    plan.initial = BottleneckState{(1.0 - *a.depth) * eq.n, eq.p};
  }

  plan.t_grid.push_back(0.0);
  for (double tv : geomspace(t_max * 2.5e-5, t_max, n_points))
    plan.t_grid.push_back(tv);

  SimTrace sim;
  try {
    sim = simulate(plan);
  } catch (const IntegratorError& e) {
    std::cerr << "integrator failure at t = " << e.t_fail << " s: " << e.what()
              << "\n"
              << "plan: B0 = " << plan.params.B0 << " T, T_bath = " << plan.T_bath
              << " K, W_p = " << plan.W_p << " 1/s, t_pump = " << plan.t_pump
              << " s, tau_ph = " << plan.params.tau_ph
              << " s, c = " << plan.params.c
              << " m^-3, gamma_inh = " << plan.params.gamma_inh << " rad/s\n";
    return 4;
  }

  Table t;
  stamp(t, cfg, common);
  t.meta.emplace_back("T_bath_K", num(plan.T_bath));
  t.meta.emplace_back("B_T", num(plan.params.B0));
  t.meta.emplace_back("W_p_per_s", num(plan.W_p));
  t.meta.emplace_back("t_pump_s", num(plan.t_pump));
  t.meta.emplace_back("n_eq_per_m3", num(sim.n_eq));
  t.meta.emplace_back("p_th", num(sim.p_th));
  t.meta.emplace_back("c_per_m3", num(sim.c));
  t.columns = {"time_s", "amplitude", "phonon_occupation"};
  for (size_t i = 0; i < sim.t.size(); ++i)
    t.add_row({sim.t[i], sim.n[i] / sim.c, sim.p[i]});
  write_csv(out_path(common, "trace.csv"), t);

  if (common.svg) {
    SvgSeries s;
    s.label = "n / c";
    for (const auto& row : t.rows)
      if (row[0] > 0) s.pts.push_back({row[0], row[1]});
    SvgOptions so{"recovery trace", "t (s)", "n / c"};
    so.logx = true;
    write_svg_plot(out_path(common, "trace.svg"), so, {s});
  }

  if (a.with_fit) {
    const double gap0 = sim.n_eq - sim.n.front();
    if (std::abs(gap0) <= 1e-9 * sim.c) {
      nlohmann::json j;
      j["note"] = "trace starts at equilibrium; no decay to fit";
      j["provenance"] = {{"config_hash", hash_hex(cfg.hash)}, {"seed", common.seed}};
      write_text_atomic(out_path(common, "trace_fit.json"), j.dump(2) + "\n");
      return 0;
    }
    Trace tr;
    tr.x = sim.t;
    for (double nv : sim.n) tr.y.push_back((sim.n_eq - nv) / gap0);
    ModelOrderOptions mo;
    mo.max_components = cfg.fit.max_components;
    mo.margin = cfg.fit.margin;
    mo.nonneg_amplitudes = false;
    auto [n, f] = select_model_order(tr, mo);
    nlohmann::json j = fit_to_json(f, cfg, common);
    j["selected_components"] = n;
    write_text_atomic(out_path(common, "trace_fit.json"), j.dump(2) + "\n");
    if (!f.converged) return 3;
  }
  return 0;
}

int cmd_fit(const Config& cfg, const CliCommon& common, const FitArgs& a) {
  const Table in = read_csv(a.input);
  auto need = [&](const char* name) {
    const auto c = in.column(name);
    if (!c)
      throw CsvError(a.input + ": missing required column '" + std::string(name) +
                     "' for fit " + a.subkind);
    return *c;
  };
  auto col = [&](size_t idx) {
    std::vector<double> v;
    for (const auto& row : in.rows) v.push_back(row[idx]);
    return v;
  };

  FitResult f;
  Table resid;
  stamp(resid, cfg, common);

  if (a.subkind == "decay") {
    Trace tr;
    tr.x = col(need("time_s"));
    tr.y = col(need("amplitude"));
    if (auto e = in.column("amplitude_err")) tr.sigma = col(*e);
    ModelOrderOptions mo;
    mo.max_components = cfg.fit.max_components;
    mo.margin = cfg.fit.margin;
    mo.nonneg_amplitudes = !a.signed_amplitudes;
    auto [n, best] = select_model_order(tr, mo);
    f = best;
    resid.meta.emplace_back("selected_components", std::to_string(n));
    resid.columns = {"time_s", "amplitude", "model_amplitude", "residual"};
    for (size_t i = 0; i < tr.x.size(); ++i) {
      double m = f.has("offset") ? f.param("offset") : 0.0;
      for (int k = 1; k <= n; ++k) {
        const std::string idx = std::to_string(k);
        m += f.param("A" + idx) * std::exp(-tr.x[i] / f.param("T" + idx));
      }
      resid.add_row({tr.x[i], tr.y[i], m, tr.y[i] - m});
    }
  } else if (a.subkind == "sweep") {
    Trace tr;
    std::vector<double> xs;
    const bool field_axis = in.column("field_mT").has_value();
    if (field_axis) {
      xs = col(need("field_mT"));
      tr.axis = AxisKind::Field;
      for (double v : xs) tr.x.push_back(v * 1e-3);
    } else {
      xs = col(need("freq_GHz"));
      tr.axis = AxisKind::AngularFrequency;
      for (double v : xs) tr.x.push_back(v * 1e9 * 2.0 * consts::pi);
    }
    tr.y = col(need("kappa_MHz"));
    if (auto e = in.column("kappa_err_MHz")) tr.sigma = col(*e);
    const double g_eff = effective_g(cfg.spin, deg2rad(a.theta_deg));
    f = fit_lorentzian_kappa(tr, g_eff);

    resid.columns = {field_axis ? "field_mT" : "freq_GHz", "kappa_MHz",
                     "model_MHz", "residual_MHz"};
    for (size_t i = 0; i < tr.x.size(); ++i) {
      const double u = field_axis
                           ? g_eff * consts::mu_B * tr.x[i] / consts::hbar /
                                 (2.0 * consts::pi) * 1e-6
                           : tr.x[i] / (2.0 * consts::pi) * 1e-6;
      const double g = f.param("g_ens_MHz");
      const double gm = f.param("gamma_inh_MHz");
      const double d = u - f.param("center_MHz");
      const double m =
          f.param("baseline") + g * g * gm / (d * d + 0.25 * gm * gm);
      resid.add_row({xs[i], tr.y[i], m, tr.y[i] - m});
    }
  } else if (a.subkind == "temperature") {
    Trace tr;
    tr.axis = AxisKind::Temperature;
    for (double v : col(need("T_mK"))) tr.x.push_back(v * 1e-3);
    tr.y = col(need("T1_s"));
    if (auto e = in.column("T1_err_s")) tr.sigma = col(*e);
    f = fit_temperature_model(tr, cfg.resonator.omega0());

    resid.columns = {"T_mK", "T1_s", "model_s", "residual_s"};
    const double b0 = f.has("T1b0") ? f.param("T1b0") : 0.0;
    for (size_t i = 0; i < tr.x.size(); ++i) {
      const double th = thermal_factor(ThermalKind::Tanh, cfg.resonator.omega0(),
                                       tr.x[i]);
      const double m = f.param("T1D0") * th + b0 * th * th;
      resid.add_row({tr.x[i] * 1e3, tr.y[i], m, tr.y[i] - m});
    }
  } else if (a.subkind == "power") {
    Trace tr;
    tr.axis = AxisKind::Field;
    for (double v : col(need("field_mT"))) tr.x.push_back(v * 1e-3);
    tr.y = col(need("T1_s"));
    f = fit_power_law(tr);

    resid.columns = {"field_mT", "T1_s", "model_s", "residual_s"};
    for (size_t i = 0; i < tr.x.size(); ++i) {
      const double m = f.param("prefactor") * std::pow(tr.x[i], f.param("slope"));
      resid.add_row({tr.x[i] * 1e3, tr.y[i], m, tr.y[i] - m});
    }
  } else {
    throw std::invalid_argument("unknown fit kind '" + a.subkind +
                                "' (expected decay, sweep, temperature, power)");
  }

  write_fit_result(out_path(common, "fit_result"), f, cfg, common);
  write_csv(out_path(common, "fit_residuals.csv"), resid);
  return f.converged ? 0 : 3;
}

int cmd_reproduce(const Config& cfg, const CliCommon& common,
                  const std::string& figure) {
  CliCommon sub = common;
  sub.out = (fs::path(common.out) / figure).string();
  sub.svg = true; // the point of a figure bundle

  if (figure == "fig2a") {
    Config both = cfg;
    both.spin.nuclear_spin = 3.5;
    return cmd_spectrum(both, sub, SpectrumArgs{});
  }
  if (figure == "fig2c") {
    return cmd_angles(cfg, sub, AnglesArgs{});
  }
  if (figure == "fig3b") {
    RelaxationParams p = cfg.relaxation;
    const double T = cfg.t_anchor;

    Table t;
    stamp(t, cfg, common);
    t.meta.emplace_back("T_K", num(T));
    t.columns = {"B_mT", "T1_model_s", "T1_quadratic_s"};
    for (double B : geomspace(0.020, 0.350, 40)) {
      p.B0 = B;
      const double quad =
          cfg.t1_anchor * (cfg.b_anchor / B) * (cfg.b_anchor / B);
      t.add_row({B * 1e3, 1.0 / direct_rate(p, T), quad});
    }
    write_csv(out_path(sub, "curve.csv"), t);

    Table anchors;
    stamp(anchors, cfg, common);
    anchors.columns = {"field_mT", "T1_s"}; // feeds straight into `fit power`
    anchors.add_row({38.5, 67.0});
    anchors.add_row({cfg.b_anchor * 1e3, cfg.t1_anchor});
    write_csv(out_path(sub, "anchors.csv"), anchors);

    Trace tr;
    tr.axis = AxisKind::Field;
    tr.x = {38.5e-3, cfg.b_anchor};
    tr.y = {67.0, cfg.t1_anchor};
    write_fit_result(out_path(sub, "powerlaw_fit"), fit_power_law(tr), cfg, sub);

    SvgSeries model, quad, pts;
    model.label = "direct-process model";
    quad.label = "quadratic reference";
    pts.label = "anchors";
    pts.markers = true;
    for (const auto& row : t.rows) {
      model.pts.push_back({row[0], row[1]});
      quad.pts.push_back({row[0], row[2]});
    }
    for (const auto& row : anchors.rows) pts.pts.push_back({row[0], row[1]});
    SvgOptions so{"field dependence of T1", "B (mT)", "T1 (s)"};
    so.logx = so.logy = true;
    write_svg_plot(out_path(sub, "fig3b.svg"), so, {model, quad, pts});
    return 0;
  }
  if (figure == "fig4") {
    const double omega0 = cfg.resonator.omega0();
    const double T1D0 = 1.2;
    const std::vector<double> b0s = {0.25, 0.9, 1.95};

    Table curves;
    stamp(curves, cfg, common);
    curves.columns = {"T_mK", "panel1_T1_s", "panel2_T1_s", "panel3_T1_s"};
    for (double TmK : linspace(12.0, 350.0, 150)) {
      std::vector<double> row = {TmK};
      for (double b0 : b0s) {
        TemperatureModelParams mp{T1D0, b0, omega0};
        row.push_back(t1_slow_model(mp, TmK * 1e-3));
      }
      curves.rows.push_back(std::move(row));
    }
    write_csv(out_path(sub, "curves.csv"), curves);

    // synthetic measured panels on a fixed temperature grid, then the joint fit back
    const std::vector<double> grid_mK = {20, 60, 120, 180, 240, 300};
    Table panels;
    stamp(panels, cfg, common);
    panels.columns = {"panel", "T_mK", "T1_s", "T1_err_s"};
    std::vector<Trace> traces;
    std::uint64_t ctr = 0;
    for (size_t j = 0; j < b0s.size(); ++j) {
      Trace tr;
      tr.axis = AxisKind::Temperature;
      for (double TmK : grid_mK) {
        const double th = thermal_factor(ThermalKind::Tanh, omega0, TmK * 1e-3);
        const double y0 = T1D0 * th + b0s[j] * th * th;
        const double s = 0.05 * y0;
        const double y = y0 + s * rng::gauss(common.seed, ctr++);
        tr.x.push_back(TmK * 1e-3);
        tr.y.push_back(y);
        tr.sigma.push_back(s);
        panels.add_row({double(j + 1), TmK, y, s});
      }
      traces.push_back(std::move(tr));
    }
    write_csv(out_path(sub, "panels.csv"), panels);

    const FitResult joint = fit_temperature_model(traces, omega0);
    write_fit_result(out_path(sub, "joint_fit"), joint, cfg, sub);

    std::vector<SvgSeries> series;
    for (int j = 0; j < 3; ++j) {
      SvgSeries s;
      s.label = "panel " + std::to_string(j + 1);
      for (const auto& row : curves.rows)
        s.pts.push_back({row[0], row[size_t(j) + 1]});
      series.push_back(std::move(s));
    }
    for (size_t j = 0; j < traces.size(); ++j) {
      SvgSeries s;
      s.markers = true;
      for (size_t i = 0; i < traces[j].x.size(); ++i)
        s.pts.push_back({traces[j].x[i] * 1e3, traces[j].y[i]});
      series.push_back(std::move(s));
    }
    SvgOptions so{"slow relaxation vs temperature", "T (mK)", "T1 slow (s)"};
    write_svg_plot(out_path(sub, "fig4.svg"), so, series);
    return joint.converged ? 0 : 3;
  }
  throw std::invalid_argument("unknown figure id '" + figure +
                              "' (expected fig2a, fig2c, fig3b, fig4)");
}

int cmd_validate_config(const Config& cfg) {
  std::cout << "config ok, hash " << hash_hex(cfg.hash) << "\n"
            << dump_config(cfg);
  return 0;
}

} // namespace besr
