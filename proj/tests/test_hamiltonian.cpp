#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "besr/hamiltonian.hpp"
#include "besr/rng.hpp"

using namespace besr;

static const double w0 = 2.0 * consts::pi * 4.44e9;
static const double deg = consts::pi / 180.0;

static SpinSystem even_isotope() {
  SpinSystem s;
  s.nuclear_spin = 0.0;
  s.isotope_abundance = 0.78;
  return s;
}

static SpinSystem odd_isotope() {
  SpinSystem s;
  s.nuclear_spin = 3.5;
  s.isotope_abundance = 0.22;
  return s;
}

TEST_CASE("effective g factor") {
  const SpinSystem s = even_isotope();
  CHECK(effective_g(s, 0.0) == doctest::Approx(1.24).epsilon(1e-12));
  CHECK(effective_g(s, consts::pi / 2) == doctest::Approx(8.38).epsilon(1e-12));
  CHECK(effective_g(s, consts::pi / 4) == doctest::Approx(5.990075125).epsilon(1e-9));
  CHECK(effective_g(s, consts::pi / 4) == doctest::Approx(5.990).epsilon(0.001 / 5.99));
  // period pi
  CHECK(effective_g(s, 0.3) == doctest::Approx(effective_g(s, 0.3 + consts::pi)).epsilon(1e-12));
  CHECK(effective_g(s, -0.3) == doctest::Approx(effective_g(s, 0.3)).epsilon(1e-12));
}

TEST_CASE("drive projection factor") {
  const SpinSystem s = even_isotope();
  CHECK(drive_projection(s, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(drive_projection(s, consts::pi / 2) == doctest::Approx(0.714879).epsilon(1e-4));
}

TEST_CASE("two-level hamiltonian basics") {
  const SpinSystem s = even_isotope();
  const Eigen::MatrixXd H0 = build_hamiltonian(s, {0.0, 0.0});
  CHECK(H0.cwiseAbs().maxCoeff() == 0.0);

  // splitting g_par mu_B B / h at theta = 0
  const double B = 0.2558;
  const auto lev = diagonalize(build_hamiltonian(s, {B, 0.0}));
  const double split = lev.energies(1) - lev.energies(0);
  const double expect = s.g_par * consts::mu_B * B / consts::h * 1e-9;
  CHECK(split == doctest::Approx(expect).epsilon(1e-12));
  CHECK(split == doctest::Approx(4.44).epsilon(1e-3));
}

TEST_CASE("diagonalize contracts") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
  D(0, 0) = -1.0;
  D(1, 1) = 1.0;
  const auto lev = diagonalize(D);
  CHECK(lev.energies(0) == doctest::Approx(-1.0));
  CHECK(lev.energies(1) == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(lev.states(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(lev.states(1, 1)) - 1.0) < 1e-14);

  Eigen::MatrixXd bad(2, 2);
  bad << 0.0, 1.0, 2.0, 0.0;
  CHECK_THROWS_AS(diagonalize(bad), std::domain_error);

  // residual, reconstruction, unitarity, trace preservation on a dense case
  const SpinSystem odd = odd_isotope();
  const Eigen::MatrixXd H = build_hamiltonian(odd, {0.255, 20.0 * deg});
  const auto full = diagonalize(H);
  const double scale = H.cwiseAbs().maxCoeff();
  for (int k = 0; k < 16; ++k) {
    const double res =
        (H * full.states.col(k) - full.energies(k) * full.states.col(k)).norm();
    CHECK(res <= 1e-9 * scale);
  }
  const Eigen::MatrixXd rec =
      full.states * full.energies.asDiagonal() * full.states.transpose();
  CHECK((rec - H).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  const Eigen::MatrixXd gram = full.states.transpose() * full.states;
  CHECK((gram - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(full.energies.sum() == doctest::Approx(H.trace()).epsilon(1e-9));
}

TEST_CASE("analytic-numeric splitting agreement over random orientations") {
  const SpinSystem s = even_isotope();
  for (int i = 0; i < 100; ++i) {
    const double B = 0.01 + 0.49 * rng::u01(11, static_cast<std::uint64_t>(2 * i));
    const double th = consts::pi * rng::u01(11, static_cast<std::uint64_t>(2 * i + 1));
    const auto lev = diagonalize(build_hamiltonian(s, {B, th}));
    const double split = lev.energies(1) - lev.energies(0);
    const double expect = effective_g(s, th) * consts::mu_B * B / consts::h * 1e-9;
    CHECK(split == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("zero-field hyperfine multiplets for isotropic coupling") {
  SpinSystem s = odd_isotope();
  s.hyperfine_A_perp = -500.0;
  s.hyperfine_A_par = -500.0;
  const auto lev = diagonalize(build_hamiltonian(s, {0.0, 0.0}));
  // F = 4 multiplet (9 states) at 1.75 A, F = 3 (7 states) at -2.25 A; A < 0
  int n_low = 0, n_high = 0;
  for (int k = 0; k < 16; ++k) {
    if (std::abs(lev.energies(k) - (-0.875)) < 1e-9)
      ++n_low;
    else if (std::abs(lev.energies(k) - 1.125) < 1e-9)
      ++n_high;
  }
  CHECK(n_low == 9);
  CHECK(n_high == 7);
  const double gap = lev.energies(15) - lev.energies(0);
  CHECK(gap == doctest::Approx(4.0 * 0.5).epsilon(1e-12));
}

TEST_CASE("hyperfine fan topology at high field") {
  const SpinSystem s = odd_isotope();
  const auto low = diagonalize(build_hamiltonian(s, {0.250, 0.0}));
  const auto high = diagonalize(build_hamiltonian(s, {0.255, 0.0}));
  int rising = 0, falling = 0;
  for (int k = 0; k < 16; ++k) {
    const double d = high.energies(k) - low.energies(k);
    if (d > 0) ++rising;
    if (d < 0) ++falling;
  }
  CHECK(rising == 8);
  CHECK(falling == 8);
}

TEST_CASE("transition elements bounded by the spin-1/2 ceiling") {
  const SpinSystem s = odd_isotope();
  const auto lev = diagonalize(build_hamiltonian(s, {0.22, 0.0}));
  const auto trs = transitions(lev);
  CHECK(trs.size() == 120);
  for (const auto& t : trs) {
    CHECK(t.matrix_element >= 0.0);
    CHECK(t.matrix_element <= 0.25 + 1e-12);
    CHECK(t.frequency >= 0.0);
  }
}

TEST_CASE("even-isotope resonance fields") {
  const SpinSystem s = even_isotope();
  const auto at0 = resonance_fields(s, 0.0, w0, 0.005, 0.40);
  REQUIRE(at0.size() == 1);
  CHECK(at0[0].first == doctest::Approx(0.255828986821).epsilon(1e-6));
  const double analytic0 = consts::hbar * w0 / (effective_g(s, 0.0) * consts::mu_B);
  CHECK(std::abs(at0[0].first - analytic0) < 1e-6);

  const auto at90 = resonance_fields(s, consts::pi / 2, w0, 0.005, 0.40);
  REQUIRE(at90.size() == 1);
  CHECK(at90[0].first == doctest::Approx(0.037855363205).epsilon(1e-5));
  const double analytic90 =
      consts::hbar * w0 / (effective_g(s, consts::pi / 2) * consts::mu_B);
  CHECK(std::abs(at90[0].first - analytic90) < 1e-6);

  // decreasing in theta
  double prev = 1e9;
  for (double th : {0.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0}) {
    const auto r = resonance_fields(s, th * deg, w0, 0.005, 0.40);
    REQUIRE(r.size() == 1);
    CHECK(r[0].first < prev);
    prev = r[0].first;
  }

  // no crossing in range is an empty result, not an error
  CHECK(resonance_fields(s, 0.0, w0, 0.300, 0.40).empty());
}

TEST_CASE("odd-isotope allowed lines at theta 0") {
  const SpinSystem s = odd_isotope();
  const auto all = resonance_fields(s, 0.0, w0, 0.10, 0.40);
  // the default element threshold admits the weak nuclear-spin-flipping
  // crossings as well; the nuclear-spin-preserving set carries labels
  std::vector<std::pair<double, Transition>> lines;
  for (const auto& lt : all)
    if (lt.second.label.has_value()) lines.push_back(lt);
  REQUIRE(lines.size() == 8);
  const double expect[8] = {0.158167, 0.165681, 0.165730, 0.184953,
                            0.188370, 0.212047, 0.222767, 0.264987};
  for (int i = 0; i < 8; ++i)
    CHECK(lines[static_cast<size_t>(i)].first ==
          doctest::Approx(expect[i]).epsilon(5e-5));
  for (const auto& [B, t] : lines) CHECK(t.matrix_element > 0.16);
  // lines bracket the even-isotope field
  const double B_even = 0.255828986821;
  CHECK(lines.front().first < B_even);
  CHECK(lines.back().first > B_even);
  // the m_I = 7/2 line sits above the even-isotope line
  CHECK(*lines.back().second.label == doctest::Approx(3.5));
}

TEST_CASE("nuclear-spin selection strength") {
  const SpinSystem s = odd_isotope();
  const auto all = resonance_fields(s, 0.0, w0, 0.10, 0.40, 1e-9);
  double min_allowed = 1e9, max_forbidden = 0.0, max_forbidden_high = 0.0;
  for (const auto& [B, t] : all) {
    if (t.label.has_value()) {
      min_allowed = std::min(min_allowed, t.matrix_element);
    } else {
      max_forbidden = std::max(max_forbidden, t.matrix_element);
      if (B >= 0.200) max_forbidden_high = std::max(max_forbidden_high, t.matrix_element);
    }
  }
  CHECK(all.size() > 8);
  CHECK(min_allowed / max_forbidden >= 15.0);
  CHECK(min_allowed / max_forbidden_high >= 50.0);
}

TEST_CASE("boltzmann populations") {
  const SpinSystem s = even_isotope();
  const double B = 0.255828986821;
  const auto lev = diagonalize(build_hamiltonian(s, {B, 0.0}));

  CHECK_THROWS_AS(boltzmann_populations(lev, 0.0), std::domain_error);
  CHECK_THROWS_AS(boltzmann_populations(lev, -0.1), std::domain_error);

  const auto hot = boltzmann_populations(lev, 1e6);
  CHECK(hot(0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(hot.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const auto p = boltzmann_populations(lev, 0.1066);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p(0) - p(1) == doctest::Approx(0.76137027).epsilon(1e-6));
  CHECK(p(0) - p(1) == doctest::Approx(0.7616).epsilon(1e-3));

  const SpinSystem odd = odd_isotope();
  const auto lev16 = diagonalize(build_hamiltonian(odd, {0.255, 0.0}));
  const auto p16 = boltzmann_populations(lev16, 0.020);
  int imax = 0;
  p16.maxCoeff(&imax);
  CHECK(imax == 0);
  CHECK(p16(0) == doctest::Approx(0.1804032).epsilon(1e-5));
}

TEST_CASE("ensemble coupling scaling") {
  const SpinSystem s = even_isotope();
  const double B = 0.255828986821;
  const auto lev = diagonalize(build_hamiltonian(s, {B, 0.0}));
  Transition tr;
  tr.lower_index = 0;
  tr.upper_index = 1;

  CHECK(ensemble_coupling(lev, tr, 0.300, 4.8, 0.300) == doctest::Approx(4.8).epsilon(1e-12));
  const double g20 = ensemble_coupling(lev, tr, 0.020, 4.8, 0.300);
  CHECK(g20 == doctest::Approx(8.2205079).epsilon(2e-4));

  // even isotope curve is non-increasing in temperature
  double prev = 1e9;
  for (double T = 0.015; T < 1.0; T *= 1.25) {
    const double g = ensemble_coupling(lev, tr, T, 4.8, 0.300);
    CHECK(g <= prev + 1e-12);
    prev = g;
  }
}

TEST_CASE("odd-isotope top line has an interior maximum in temperature") {
  const SpinSystem s = odd_isotope();
  const auto all = resonance_fields(s, 0.0, w0, 0.10, 0.40);
  std::vector<std::pair<double, Transition>> lines;
  for (const auto& lt : all)
    if (lt.second.label.has_value()) lines.push_back(lt);
  REQUIRE(lines.size() == 8);
  const auto& [B, tr] = lines.back(); // m_I = 7/2
  const auto lev = diagonalize(build_hamiltonian(s, {B, 0.0}));

  std::vector<double> Ts, gs;
  for (double T = 0.020; T <= 1.0; T *= 1.05) {
    Ts.push_back(T);
    gs.push_back(ensemble_coupling(lev, tr, T, 1.0, 0.300));
  }
  size_t imax = 0;
  for (size_t i = 0; i < gs.size(); ++i)
    if (gs[i] > gs[imax]) imax = i;
  CHECK(imax > 0);
  CHECK(imax < gs.size() - 1);
  CHECK(Ts[imax] == doctest::Approx(0.0692).epsilon(0.08));
}

TEST_CASE("spin temperature inversion") {
  const SpinSystem s = even_isotope();
  const auto lev = diagonalize(build_hamiltonian(s, {0.255828986821, 0.0}));
  Transition tr;
  tr.lower_index = 0;
  tr.upper_index = 1;
  auto model = [&](double T) { return ensemble_coupling(lev, tr, T, 4.8, 0.300); };

  const double target = model(0.050);
  CHECK(infer_spin_temperature(model, target, 0.005, 1.0, 0.010) ==
        doctest::Approx(0.050).epsilon(1e-4));

  auto displaced = [&](double T) { return 1.1 * model(T); };
  const double target2 = displaced(0.0487);
  CHECK(std::abs(infer_spin_temperature(displaced, target2, 0.005, 1.0, 0.010) -
                 0.0487) < 1e-4);

  CHECK_THROWS_AS(infer_spin_temperature(model, 100.0, 0.005, 1.0, 0.010),
                  std::runtime_error);
}
