#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <besr/csvio.hpp>
#include <besr/hamiltonian.hpp>
#include <besr/physcore.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace besr;
using nlohmann::json;
namespace fs = std::filesystem;

// end-to-end checks against the installed binary; BESR_BIN_PATH and
// BESR_SOURCE_DIR come from the build system

static int run(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(BESR_BIN_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string acc;
  char buf[4096];
  size_t m;
  while ((m = fread(buf, 1, sizeof buf, p)) > 0) acc.append(buf, m);
  const int st = pclose(p);
  if (out) *out = acc;
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

struct TmpDir {
  fs::path p;
  explicit TmpDir(const std::string& tag) {
    p = fs::temp_directory_path() / ("besr_cli_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
  }
  ~TmpDir() { fs::remove_all(p); }
  std::string sub(const std::string& s) const { return (p / s).string(); }
};

static std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

// reference configuration used throughout; overrides replace values by key,
// an empty value drops the line entirely
static std::string write_config(
    const TmpDir& d, const std::map<std::string, std::string>& over = {},
    const std::string& name = "run.cfg") {
  std::vector<std::pair<std::string, std::string>> kv = {
      {"spin.g_perp", "8.38 dimensionless"},
      {"spin.g_par", "1.24 dimensionless"},
      {"spin.nuclear_spin", "0 dimensionless"},
      {"resonator.f0", "4.44 GHz"},
      {"resonator.kappa_c", "2.5 MHz"},
      {"resonator.kappa_i", "0.4 MHz"},
      {"relaxation.t1_anchor", "2.2 s"},
      {"relaxation.b_anchor", "254 mT"},
      {"relaxation.t_anchor", "20 mK"},
      {"relaxation.sound_velocity", "3000 m/s"},
      {"relaxation.concentration", "5e17 cm^-3"},
      {"relaxation.crystal_thickness", "0.2 mm"},
      {"relaxation.gamma_inh", "28 MHz"},
  };
  std::ofstream out(d.sub(name));
  for (auto& [k, v] : kv) {
    std::string val = v;
    if (auto it = over.find(k); it != over.end()) val = it->second;
    if (!val.empty()) out << k << " = " << val << "\n";
  }
  for (auto& [k, v] : over)
    if (std::none_of(kv.begin(), kv.end(),
                     [&](auto& e) { return e.first == k; }))
      out << k << " = " << v << "\n";
  return d.sub(name);
}

static std::vector<double> column(const Table& t, const std::string& name) {
  auto idx = t.column(name);
  REQUIRE(idx.has_value());
  std::vector<double> v;
  for (const auto& r : t.rows) v.push_back(r[*idx]);
  return v;
}

TEST_CASE("help and argument errors") {
  std::string out;
  CHECK(run("--help", &out) == 0);
  CHECK(out.find("spectrum") != std::string::npos);
  CHECK(out.find("simulate") != std::string::npos);
  CHECK(run("") == 2);               // a subcommand is required
  CHECK(run("spectrum") == 2);       // --config is required
  CHECK(run("nonsense --config x") == 2);
}

TEST_CASE("validate-config accepts the reference file and freezes its hash") {
  TmpDir d("validate");
  const std::string cfg = write_config(d);
  std::string out;
  CHECK(run("validate-config --config " + cfg, &out) == 0);
  CHECK(out.find("config ok, hash 0xa96d5d99938a66dd") != std::string::npos);
  // derived quantity surfaced in the dump: exchange strength default
  CHECK(out.find("246.57331776800009") != std::string::npos);
}

TEST_CASE("config diagnostics carry file and line") {
  TmpDir d("cfgerr");
  std::string out;

  std::ofstream(d.sub("a.cfg")) << "spin.g_perp = 8.38\n";
  CHECK(run("validate-config --config " + d.sub("a.cfg"), &out) == 2);
  CHECK(out.find("a.cfg:1") != std::string::npos);
  CHECK(out.find("missing unit suffix") != std::string::npos);

  std::ofstream(d.sub("b.cfg")) << "bogus.key = 1 s\n";
  CHECK(run("validate-config --config " + d.sub("b.cfg"), &out) == 2);
  CHECK(out.find("unknown key 'bogus.key'") != std::string::npos);

  std::ofstream(d.sub("c.cfg")) << "resonator.f0 = 4.44 MHz\n";
  CHECK(run("validate-config --config " + d.sub("c.cfg"), &out) == 2);
  CHECK(out.find("expected unit 'GHz'") != std::string::npos);

  std::ofstream(d.sub("d.cfg"))
      << "resonator.f0 = 4.44 GHz\nresonator.f0 = 4.45 GHz\n";
  CHECK(run("validate-config --config " + d.sub("d.cfg"), &out) == 2);
  CHECK(out.find("duplicate key") != std::string::npos);
  CHECK(out.find("first at line 1") != std::string::npos);

  write_config(d, {{"resonator.f0", ""}}, "e.cfg");
  CHECK(run("validate-config --config " + d.sub("e.cfg"), &out) == 2);
  CHECK(out.find("missing required key 'resonator.f0'") != std::string::npos);

  CHECK(run("validate-config --config " + d.sub("missing.cfg")) == 2);
}

TEST_CASE("spectrum marks the resonance crossing") {
  TmpDir d("spectrum");
  const std::string cfg = write_config(d);
  CHECK(run("spectrum --config " + cfg + " --out " + d.sub("o")) == 0);

  Table mk = read_csv(d.sub("o") + "/spectrum_markers.csv");
  auto B = column(mk, "B0_mT");
  REQUIRE(B.size() == 1);
  CHECK(B[0] == doctest::Approx(255.82898721694974).epsilon(1e-12));
  // located by field bisection, so the frequency lands within its tolerance
  auto f = column(mk, "frequency_GHz");
  CHECK(f[0] == doctest::Approx(4.44).epsilon(1e-8));

  // a zero-width range degenerates to a single field point
  CHECK(run("spectrum --config " + cfg + " --out " + d.sub("z") +
            " --b-min 100 --b-max 100 --points 5") == 0);
  Table sp = read_csv(d.sub("z") + "/spectrum.csv");
  CHECK(sp.rows.size() == 1);
}

TEST_CASE("spectrum with nuclear spin emits the sixteen-level fan") {
  TmpDir d("hyperfine");
  const std::string cfg = write_config(d, {{"spin.nuclear_spin", "3.5 dimensionless"}});
  CHECK(run("spectrum --config " + cfg + " --out " + d.sub("o")) == 0);
  Table sp = read_csv(d.sub("o") + "/spectrum.csv");
  int odd_cols = 0;
  for (const auto& c : sp.columns)
    if (c.rfind("odd167_", 0) == 0) ++odd_cols;
  CHECK(odd_cols == 16);
  Table mk = read_csv(d.sub("o") + "/spectrum_markers.csv");
  int preserving = 0;
  for (double v : column(mk, "nuclear_spin_x2"))
    if (v == 7.0) ++preserving;
  CHECK(preserving == 8);
}

TEST_CASE("angle sweep is symmetric and shows the drive-projection dip") {
  TmpDir d("angles");
  const std::string cfg = write_config(d);
  CHECK(run("angles --config " + cfg + " --out " + d.sub("o")) == 0);
  Table t = read_csv(d.sub("o") + "/angles.csv");
  auto th = column(t, "theta_deg");
  auto B = column(t, "B0_mT");
  auto g = column(t, "g_ens_rel");
  REQUIRE(th.size() == 181);
  for (size_t i = 0; i < th.size(); ++i) {
    const size_t jm = th.size() - 1 - i;
    CHECK(B[i] == doctest::Approx(B[jm]).epsilon(1e-9));
  }
  CHECK(B.front() == doctest::Approx(37.855362987518326).epsilon(1e-9));
  CHECK(B[90] == doctest::Approx(255.82898721694974).epsilon(1e-9));
  CHECK(g.front() == doctest::Approx(0.71480610080400775).epsilon(1e-9));
  CHECK(g[90] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rate table reproduces the anchor and the quadratic field law") {
  TmpDir d("rates");
  const std::string cfg = write_config(d);
  CHECK(run("rates --config " + cfg + " --out " + d.sub("o") +
            " --axis T --min 20 --max 400 --points 2") == 0);
  Table t = read_csv(d.sub("o") + "/rates.csv");
  CHECK(column(t, "T1D_s")[0] == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(column(t, "T1b_s")[0] ==
        doctest::Approx(0.043246047800654143).epsilon(1e-12));

  // degenerate grids are rejected rather than silently collapsed
  CHECK(run("rates --config " + cfg + " --out " + d.sub("g") +
            " --axis T --min 20 --max 20 --points 1") == 2);

  CHECK(run("rates --config " + cfg + " --out " + d.sub("b") +
            " --axis B --min 127 --max 254 --points 2") == 0);
  Table tb = read_csv(d.sub("b") + "/rates.csv");
  auto t1d = column(tb, "T1D_s");
  REQUIRE(t1d.size() == 2);
  CHECK(t1d[0] / t1d[1] == doctest::Approx(4.0).epsilon(1e-12));

  CHECK(run("rates --config " + cfg + " --out " + d.sub("x") + " --axis Q") == 2);
}

TEST_CASE("simulate without drive stays flat and says so") {
  TmpDir d("flat");
  const std::string cfg = write_config(d);
  CHECK(run("simulate --config " + cfg + " --out " + d.sub("o") + " --fit") == 0);
  json j = json::parse(slurp(d.sub("o") + "/trace_fit.json"));
  CHECK(j["note"].get<std::string>().find("equilibrium") != std::string::npos);
  Table t = read_csv(d.sub("o") + "/trace.csv");
  auto n = column(t, "amplitude");
  CHECK(std::abs(n.front() - n.back()) <= 1e-9 * std::abs(n.front()));
}

TEST_CASE("simulate recovery matches the additive slow time") {
  TmpDir d("recover");
  const std::string cfg = write_config(d);
  CHECK(run("simulate --config " + cfg + " --out " + d.sub("o") +
            " --depth 0.3 --t-max 40 --fit --svg") == 0);
  json j = json::parse(slurp(d.sub("o") + "/trace_fit.json"));
  CHECK(j["converged"].get<bool>());
  const int n = j["selected_components"].get<int>();
  CHECK(n >= 1);
  double slow = 0.0;
  for (const auto& p : j["params"]) {
    const std::string nm = p["name"].get<std::string>();
    if (nm.size() >= 2 && nm[0] == 'T' && std::isdigit(nm[1]))
      slow = std::max(slow, p["value"].get<double>());
  }
  // T1D + tau_ph + T1b at 20 mK for the reference parameters
  CHECK(slow == doctest::Approx(2.2432461144673165).epsilon(0.01));

  Table t = read_csv(d.sub("o") + "/trace.csv");
  CHECK(t.meta_value("seed") != nullptr);
  CHECK(*t.meta_value("config_hash") == "0xa96d5d99938a66dd");
  CHECK(fs::exists(d.sub("o") + "/trace.svg"));

  // the emitted trace re-ingests losslessly
  Table again = t;
  write_csv(d.sub("o") + "/copy.csv", again);
  CHECK(slurp(d.sub("o") + "/copy.csv") == slurp(d.sub("o") + "/trace.csv"));
}

TEST_CASE("pump duration ordering through the command line") {
  TmpDir d("pump");
  // phonon lifetime of one second and a band holding half the spin density
  const std::string cfg = write_config(
      d, {{"relaxation.t1_anchor", "1.2 s"},
          {"relaxation.crystal_thickness", "3000000 mm"},
          {"relaxation.concentration", "1.5414211788467704e12 cm^-3"}});
  auto slow_of = [&](const std::string& dir) {
    json j = json::parse(slurp(dir + "/trace_fit.json"));
    double s = 0.0;
    for (const auto& p : j["params"]) {
      const std::string nm = p["name"].get<std::string>();
      if (nm.size() >= 2 && nm[0] == 'T' && std::isdigit(nm[1]))
        s = std::max(s, p["value"].get<double>());
    }
    return s;
  };
  CHECK(run("simulate --config " + cfg + " --out " + d.sub("a") +
            " --pump-rate 5 --pump-duration 3 --t-max 40 --fit") == 0);
  CHECK(run("simulate --config " + cfg + " --out " + d.sub("b") +
            " --pump-rate 5 --pump-duration 0.01 --t-max 40 --fit") == 0);
  const double s_long = slow_of(d.sub("a"));
  const double s_short = slow_of(d.sub("b"));
  CHECK(s_long == doctest::Approx(4.715641188900289).epsilon(0.02));
  CHECK(s_short == doctest::Approx(3.9052356543855677).epsilon(0.02));
  CHECK(s_long > 1.15 * s_short);
}

TEST_CASE("integrator breakdown surfaces as exit code 4") {
  TmpDir d("integ");
  const std::string cfg = write_config(d, {{"relaxation.t1_anchor", "1e-300 s"}});
  std::string out;
  CHECK(run("simulate --config " + cfg + " --out " + d.sub("o") + " --depth 0.3",
            &out) == 4);
  CHECK(out.find("integrator failure at t") != std::string::npos);
  CHECK(out.find("plan:") != std::string::npos);
}

TEST_CASE("decay fit on the bundled three-component fixture") {
  TmpDir d("fixdecay");
  const std::string cfg = write_config(d);
  const std::string fx =
      std::string(BESR_SOURCE_DIR) + "/fixtures/decay_triple.csv";
  CHECK(run("fit decay --config " + cfg + " --input " + fx + " --out " +
            d.sub("o")) == 0);
  json j = json::parse(slurp(d.sub("o") + "/fit_result.json"));
  CHECK(j["model_id"] == "multiexp3+offset");
  std::map<std::string, double> ps;
  for (const auto& p : j["params"])
    ps[p["name"].get<std::string>()] = p["value"].get<double>();
  CHECK(std::abs(ps["T1"] - 0.0107) / 0.0107 < 0.15);
  CHECK(std::abs(ps["T2"] - 0.298) / 0.298 < 0.15);
  CHECK(std::abs(ps["T3"] - 2.2) / 2.2 < 0.15);
  CHECK(std::abs(ps["w1"] - 13.0) < 5.0);
  CHECK(std::abs(ps["w2"] - 41.0) < 5.0);
  CHECK(std::abs(ps["w3"] - 46.0) < 5.0);

  Table r = read_csv(d.sub("o") + "/fit_residuals.csv");
  CHECK(r.rows.size() == 200);
  CHECK(*r.meta_value("selected_components") == "3");
}

TEST_CASE("decay fit of a rising recovery needs the signed flag") {
  TmpDir d("signed");
  const std::string cfg = write_config(d);
  CHECK(run("simulate --config " + cfg + " --out " + d.sub("s") +
            " --depth 0.3 --t-max 40") == 0);
  const std::string tr = d.sub("s") + "/trace.csv";

  // non-negative amplitudes cannot represent an upward recovery
  std::string out;
  CHECK(run("fit decay --config " + cfg + " --input " + tr + " --out " +
            d.sub("a"), &out) == 0);
  json ja = json::parse(slurp(d.sub("a") + "/fit_result.json"));
  CHECK(ja["model_id"] == "multiexp0+offset");

  CHECK(run("fit decay --config " + cfg + " --input " + tr + " --out " +
            d.sub("b") + " --signed") == 0);
  json jb = json::parse(slurp(d.sub("b") + "/fit_result.json"));
  std::map<std::string, double> ps;
  for (const auto& p : jb["params"])
    ps[p["name"].get<std::string>()] = p["value"].get<double>();
  CHECK(ps["offset"] == doctest::Approx(0.99995279961898953).epsilon(1e-3));
  CHECK(ps.count("T2") == 1);
  CHECK(ps["T2"] == doctest::Approx(2.2432461144673165).epsilon(0.01));
  CHECK(ps["A2"] < 0.0);
}

TEST_CASE("sweep fit recovers an exact absorption line") {
  TmpDir d("sweep");
  const std::string cfg = write_config(d);

  SpinSystem sys;
  const double g_eff = effective_g(sys, 0.0);
  Table in;
  in.columns = {"field_mT", "kappa_MHz"};
  for (int i = 0; i <= 120; ++i) {
    const double B_mT = 250.0 + i * 12.0 / 120.0;
    const double u = g_eff * consts::mu_B * B_mT * 1e-3 / consts::hbar /
                     (2.0 * consts::pi) * 1e-6;
    const double det = u - 4440.0;
    in.add_row({B_mT, 0.5 + 4.8 * 4.8 * 28.0 / (det * det + 0.25 * 28.0 * 28.0)});
  }
  write_csv(d.sub("sweep.csv"), in);

  CHECK(run("fit sweep --config " + cfg + " --input " + d.sub("sweep.csv") +
            " --out " + d.sub("o")) == 0);
  json j = json::parse(slurp(d.sub("o") + "/fit_result.json"));
  std::map<std::string, double> ps;
  for (const auto& p : j["params"])
    ps[p["name"].get<std::string>()] = p["value"].get<double>();
  CHECK(ps["g_ens_MHz"] == doctest::Approx(4.8).epsilon(1e-4));
  CHECK(ps["gamma_inh_MHz"] == doctest::Approx(28.0).epsilon(1e-4));
  CHECK(ps["center_MHz"] == doctest::Approx(4440.0).epsilon(1e-6));
  CHECK(ps["center_mT"] == doctest::Approx(255.82898721694974).epsilon(1e-4));

  // featureless data is a diagnosed failure, not a silent answer
  Table flat;
  flat.columns = {"field_mT", "kappa_MHz"};
  for (int i = 0; i < 5; ++i) flat.add_row({250.0 + i, 2.0});
  write_csv(d.sub("flat.csv"), flat);
  std::string out;
  CHECK(run("fit sweep --config " + cfg + " --input " + d.sub("flat.csv") +
            " --out " + d.sub("f"), &out) == 3);
  CHECK(out.find("noise floor") != std::string::npos);
}

TEST_CASE("temperature fit on the bundled fixture") {
  TmpDir d("fixtemp");
  const std::string cfg = write_config(d);
  const std::string fx =
      std::string(BESR_SOURCE_DIR) + "/fixtures/t1_vs_temperature.csv";
  CHECK(run("fit temperature --config " + cfg + " --input " + fx + " --out " +
            d.sub("o")) == 0);
  json j = json::parse(slurp(d.sub("o") + "/fit_result.json"));
  std::map<std::string, double> ps;
  for (const auto& p : j["params"])
    ps[p["name"].get<std::string>()] = p["value"].get<double>();
  CHECK(std::abs(ps["T1D0"] - 1.2) / 1.2 < 0.10);
  CHECK(std::abs(ps["T1b0"] - 1.95) / 1.95 < 0.10);
}

TEST_CASE("power-law fit flags the anchor pair's softer exponent") {
  TmpDir d("power");
  const std::string cfg = write_config(d);
  Table in;
  in.columns = {"field_mT", "T1_s"};
  in.add_row({38.5, 67.0});
  in.add_row({254.0, 2.2});
  write_csv(d.sub("anchor.csv"), in);
  CHECK(run("fit power --config " + cfg + " --input " + d.sub("anchor.csv") +
            " --out " + d.sub("o")) == 0);
  json j = json::parse(slurp(d.sub("o") + "/fit_result.json"));
  std::map<std::string, double> ps;
  for (const auto& p : j["params"])
    ps[p["name"].get<std::string>()] = p["value"].get<double>();
  CHECK(ps["exponent"] == doctest::Approx(1.8107164200140256).epsilon(1e-12));
  bool noted = false;
  for (const auto& nt : j["notes"])
    if (nt.get<std::string>().find("quadratic") != std::string::npos)
      noted = true;
  CHECK(noted);
}

TEST_CASE("malformed inputs are rejected with a location") {
  TmpDir d("badcsv");
  const std::string cfg = write_config(d);
  std::string out;

  std::ofstream(d.sub("bad.csv")) << "time_s, amplitude\n0.1, not_a_number\n";
  CHECK(run("fit decay --config " + cfg + " --input " + d.sub("bad.csv") +
            " --out " + d.sub("o"), &out) == 2);
  CHECK(out.find("bad.csv:2") != std::string::npos);

  std::ofstream(d.sub("cols.csv")) << "t, y\n0.1, 1.0\n";
  CHECK(run("fit decay --config " + cfg + " --input " + d.sub("cols.csv") +
            " --out " + d.sub("o"), &out) == 2);
  CHECK(out.find("time_s") != std::string::npos);

  std::ofstream(d.sub("ok.csv")) << "time_s, amplitude\n0.1, 1.0\n0.2, 0.5\n";
  CHECK(run("fit ripple --config " + cfg + " --input " + d.sub("ok.csv") +
            " --out " + d.sub("o"), &out) == 2);
  CHECK(out.find("expected decay, sweep, temperature, power") !=
        std::string::npos);
}

TEST_CASE("figure bundles are deterministic and seed-sensitive") {
  TmpDir d("repro");
  const std::string cfg = write_config(d);

  for (const std::string fig : {"fig2a", "fig2c", "fig3b", "fig4"})
    CHECK(run("reproduce " + fig + " --config " + cfg + " --out " + d.sub("r1")) == 0);
  CHECK(run("reproduce fig4 --config " + cfg + " --out " + d.sub("r2")) == 0);
  CHECK(slurp(d.sub("r1") + "/fig4/panels.csv") ==
        slurp(d.sub("r2") + "/fig4/panels.csv"));
  CHECK(slurp(d.sub("r1") + "/fig4/joint_fit.json") ==
        slurp(d.sub("r2") + "/fig4/joint_fit.json"));

  CHECK(run("reproduce fig4 --config " + cfg + " --out " + d.sub("r3") +
            " --seed 7") == 0);
  CHECK(slurp(d.sub("r1") + "/fig4/panels.csv") !=
        slurp(d.sub("r3") + "/fig4/panels.csv"));
  // model curves carry no noise, only the synthetic panels do
  auto strip_meta = [](std::string s) {
    std::string r;
    size_t pos = 0;
    while (pos < s.size()) {
      size_t e = s.find('\n', pos);
      if (e == std::string::npos) e = s.size();
      if (s[pos] != '#') r.append(s, pos, e - pos + 1);
      pos = e + 1;
    }
    return r;
  };
  CHECK(strip_meta(slurp(d.sub("r1") + "/fig4/curves.csv")) ==
        strip_meta(slurp(d.sub("r3") + "/fig4/curves.csv")));

  Table anchors = read_csv(d.sub("r1") + "/fig3b/anchors.csv");
  auto B = column(anchors, "field_mT");
  auto T1 = column(anchors, "T1_s");
  REQUIRE(B.size() == 2);
  CHECK(B[0] == doctest::Approx(38.5).epsilon(1e-12));
  CHECK(T1[0] == doctest::Approx(67.0).epsilon(1e-12));
  CHECK(B[1] == doctest::Approx(254.0).epsilon(1e-12));
  CHECK(T1[1] == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(fs::exists(d.sub("r1") + "/fig3b/fig3b.svg"));
  CHECK(fs::exists(d.sub("r1") + "/fig2a/spectrum.svg"));

  // the emitted anchor table is itself a valid power-law fit input
  CHECK(run("fit power --config " + cfg + " --input " + d.sub("r1") +
            "/fig3b/anchors.csv --out " + d.sub("pp")) == 0);
  json jp = json::parse(slurp(d.sub("pp") + "/fit_result.json"));
  for (const auto& p : jp["params"])
    if (p["name"] == "exponent")
      CHECK(p["value"].get<double>() ==
            doctest::Approx(1.8107164200140256).epsilon(1e-12));

  std::string out;
  CHECK(run("reproduce fig9 --config " + cfg + " --out " + d.sub("x"), &out) == 2);
  CHECK(out.find("unknown figure id") != std::string::npos);
}

TEST_CASE("tabular fit output for spreadsheet consumers") {
  TmpDir d("fmt");
  const std::string cfg = write_config(d);
  const std::string fx =
      std::string(BESR_SOURCE_DIR) + "/fixtures/decay_triple.csv";
  CHECK(run("fit decay --config " + cfg + " --input " + fx + " --out " +
            d.sub("o") + " --format csv") == 0);
  const std::string body = slurp(d.sub("o") + "/fit_result.csv");
  CHECK(body.find("param,value,stderr") != std::string::npos);
  CHECK(body.find("T3,") != std::string::npos);
  CHECK(!fs::exists(d.sub("o") + "/fit_result.json"));
}

TEST_CASE("bundled fixtures round-trip byte for byte") {
  TmpDir d("roundtrip");
  for (const std::string f : {"decay_triple.csv", "t1_vs_temperature.csv"}) {
    const std::string src = std::string(BESR_SOURCE_DIR) + "/fixtures/" + f;
    Table t = read_csv(src);
    write_csv(d.sub(f), t);
    CHECK(slurp(d.sub(f)) == slurp(src));
  }
}
