#include "besr/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace besr {

void SpinSystem::validate() const {
  if (!(g_perp > 0.0) || !(g_par > 0.0))
    throw std::domain_error("g tensor components must be positive");
  if (nuclear_spin != 0.0 && nuclear_spin != 3.5)
    throw std::domain_error("nuclear spin must be 0 or 7/2");
  if (isotope_abundance < 0.0 || isotope_abundance > 1.0)
    throw std::domain_error("isotope abundance must be within [0,1]");
  if (!(spin_density > 0.0))
    throw std::domain_error("spin density must be positive");
}

double effective_g(const SpinSystem& sys, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return std::sqrt(sys.g_par * sys.g_par * c * c + sys.g_perp * sys.g_perp * s * s);
}

double drive_projection(const SpinSystem& sys, double theta) {
  // the drive field lies along b; the spin picks up g_b on one transverse
  // axis and g_perp*g_par/g_eff on the other
  const double ge = effective_g(sys, theta);
  const double gb = sys.g_perp;
  const double gt = sys.g_perp * sys.g_par / ge;
  return std::sqrt(0.5 * (gb * gb + gt * gt)) / sys.g_perp;
}

namespace {

// angular momentum matrices for spin j in the |m = j .. -j> basis,
// split into real symmetric (jx), real antisymmetric K with jy = i*K, and jz
struct SpinOps {
  Eigen::MatrixXd jx, ky, jz; // jy = i * ky
};

SpinOps make_ops(double j) {
  const int d = static_cast<int>(2.0 * j + 1.5);
  SpinOps o;
  o.jx = Eigen::MatrixXd::Zero(d, d);
  o.ky = Eigen::MatrixXd::Zero(d, d);
  o.jz = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double m = j - a;
    o.jz(a, a) = m;
    if (a + 1 < d) {
      // <m|J+|m-1> = sqrt(j(j+1) - m(m-1))
      const double amp = 0.5 * std::sqrt(j * (j + 1.0) - m * (m - 1.0));
      o.jx(a, a + 1) = amp;
      o.jx(a + 1, a) = amp;
      o.ky(a, a + 1) = -amp; // Jy = (J+ - J-)/2i
      o.ky(a + 1, a) = amp;
    }
  }
  return o;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

} // namespace

Eigen::MatrixXd build_hamiltonian(const SpinSystem& sys, const FieldOrientation& field) {
  sys.validate();
  if (field.B_mag < 0.0) throw std::domain_error("field magnitude must be >= 0");

  const SpinOps S = make_ops(0.5);
  const double Ba = field.B_mag * std::sin(field.theta); // a axis
  const double Bc = field.B_mag * std::cos(field.theta); // c axis
  const double zee = consts::mu_B / consts::h * 1e-9;    // T -> GHz per unit g*m

  if (sys.nuclear_spin == 0.0) {
    Eigen::MatrixXd H = zee * (sys.g_perp * Ba * S.jx + sys.g_par * Bc * S.jz);
    return H;
  }

  const SpinOps I = make_ops(sys.nuclear_spin);
  const int dI = static_cast<int>(2.0 * sys.nuclear_spin + 1.5);
  const Eigen::MatrixXd idS = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd idI = Eigen::MatrixXd::Identity(dI, dI);

  const double Aperp = sys.hyperfine_A_perp * 1e-3; // MHz -> GHz
  const double Apar = sys.hyperfine_A_par * 1e-3;

  Eigen::MatrixXd H = zee * (sys.g_perp * Ba * kron(S.jx, idI) +
                             sys.g_par * Bc * kron(S.jz, idI));
  // Sx Ix + Sz Iz terms are real; Sy Iy = (i Ky)(i Ky') = -Ky (x) Ky'
  H += Aperp * (kron(S.jx, I.jx) - kron(S.ky, I.ky));
  H += Apar * kron(S.jz, I.jz);

  if (sys.nuclear_zeeman) {
    const double mu_N = 5.0507837461e-27; // J/T
    const double nz = sys.g_n * mu_N / consts::h * 1e-9;
    H -= nz * (Ba * kron(idS, I.jx) + Bc * kron(idS, I.jz));
  }
  return H;
}

LevelDiagram diagonalize(const Eigen::MatrixXd& H) {
  if (H.rows() != H.cols()) throw std::domain_error("hamiltonian must be square");
  const double scale = std::max(1e-300, H.cwiseAbs().maxCoeff());
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::domain_error("hamiltonian must be symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");

  LevelDiagram out;
  out.energies = es.eigenvalues();
  out.states = es.eigenvectors();

  // deterministic order inside degenerate groups: descending <Sz>
  const int d = static_cast<int>(out.energies.size());
  const int dI = d / 2;
  Eigen::VectorXd szdiag(d);
  for (int k = 0; k < d; ++k) szdiag(k) = (k < dI) ? 0.5 : -0.5;
  const double tol = 1e-9 * std::max(1.0, out.energies.cwiseAbs().maxCoeff());
  int i = 0;
  while (i < d) {
    int j = i + 1;
    while (j < d && out.energies(j) - out.energies(i) <= tol) ++j;
    if (j - i > 1) {
      std::vector<int> idx(j - i);
      for (int k = 0; k < j - i; ++k) idx[k] = i + k;
      std::vector<double> sz(j - i);
      for (int k = 0; k < j - i; ++k)
        sz[k] = out.states.col(i + k).dot(szdiag.asDiagonal() * out.states.col(i + k));
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return sz[a - i] > sz[b - i];
      });
      Eigen::MatrixXd cols(d, j - i);
      Eigen::VectorXd ens(j - i);
      for (int k = 0; k < j - i; ++k) {
        cols.col(k) = out.states.col(idx[k]);
        ens(k) = out.energies(idx[k]);
      }
      out.states.middleCols(i, j - i) = cols;
      out.energies.segment(i, j - i) = ens;
    }
    i = j;
  }

  // fix overall sign for full determinism: largest-magnitude entry positive
  for (int k = 0; k < d; ++k) {
    int imax = 0;
    out.states.col(k).cwiseAbs().maxCoeff(&imax);
    if (out.states(imax, k) < 0.0) out.states.col(k) = -out.states.col(k);
  }
  return out;
}

namespace {

std::optional<double> sharp_mI(const Eigen::VectorXd& state, int dI, double Ispin) {
  // dominant nuclear projection: per-m_I weight, labeled when one bin holds
  // the clear majority (transverse hyperfine admixes neighbors at tens of
  // percent without changing the line's identity)
  std::vector<double> w(static_cast<size_t>(dI), 0.0);
  for (int k = 0; k < state.size(); ++k)
    w[static_cast<size_t>(k % dI)] += state(k) * state(k);
  int best = 0;
  for (int k = 1; k < dI; ++k)
    if (w[static_cast<size_t>(k)] > w[static_cast<size_t>(best)]) best = k;
  if (w[static_cast<size_t>(best)] < 0.6) return std::nullopt;
  return Ispin - best;
}

} // namespace

std::vector<Transition> transitions(const LevelDiagram& levels, double element_floor) {
  const int d = static_cast<int>(levels.energies.size());
  const int dI = d / 2;
  const double Ispin = (dI - 1) / 2.0;

  // Sx in the product basis couples the two m_S blocks diagonally in m_I
  std::vector<Transition> out;
  for (int l = 0; l < d; ++l) {
    for (int u = l + 1; u < d; ++u) {
      double amp = 0.0;
      for (int k = 0; k < dI; ++k)
        amp += 0.5 * (levels.states(k, u) * levels.states(dI + k, l) +
                      levels.states(dI + k, u) * levels.states(k, l));
      const double el = amp * amp;
      if (el < element_floor) continue;
      Transition t;
      t.lower_index = l;
      t.upper_index = u;
      t.frequency = levels.energies(u) - levels.energies(l);
      t.matrix_element = el;
      if (dI > 1) {
        const auto ml = sharp_mI(levels.states.col(l), dI, Ispin);
        const auto mu = sharp_mI(levels.states.col(u), dI, Ispin);
        if (ml && mu && *ml == *mu) t.label = *ml;
      }
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
    return a.frequency < b.frequency;
  });
  return out;
}

namespace {

struct PairFreq {
  double freq;
  double element;
};

PairFreq pair_freq(const SpinSystem& sys, double theta, double B, int l, int u) {
  const auto lev = diagonalize(build_hamiltonian(sys, {B, theta}));
  const int d = static_cast<int>(lev.energies.size());
  const int dI = d / 2;
  double amp = 0.0;
  for (int k = 0; k < dI; ++k)
    amp += 0.5 * (lev.states(k, u) * lev.states(dI + k, l) +
                  lev.states(dI + k, u) * lev.states(k, l));
  return {lev.energies(u) - lev.energies(l), amp * amp};
}

} // namespace

std::vector<std::pair<double, Transition>> resonance_fields(
    const SpinSystem& sys, double theta, double omega0, double B_lo, double B_hi,
    double element_threshold_rel) {
  if (!(omega0 > 0.0)) throw std::domain_error("resonance search requires omega0 > 0");
  if (!(B_hi > B_lo) || !std::isfinite(B_lo) || !std::isfinite(B_hi))
    throw std::domain_error("invalid field range");

  const double f0 = omega0 / (2.0 * consts::pi) * 1e-9; // GHz
  const double stepB = 1e-3;                            // 1 mT scan grid
  const int d = sys.dim();
  const int npair = d * (d - 1) / 2;

  // scan: frequency of every sorted-index pair on the grid
  std::vector<double> grid;
  for (double B = B_lo; B < B_hi; B += stepB) grid.push_back(B);
  grid.push_back(B_hi);

  std::vector<std::vector<double>> freq(grid.size(), std::vector<double>(npair));
  std::vector<std::vector<double>> elem(grid.size(), std::vector<double>(npair));
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const auto lev = diagonalize(build_hamiltonian(sys, {grid[gi], theta}));
    const int dI = d / 2;
    int pi = 0;
    for (int l = 0; l < d; ++l)
      for (int u = l + 1; u < d; ++u, ++pi) {
        double amp = 0.0;
        for (int k = 0; k < dI; ++k)
          amp += 0.5 * (lev.states(k, u) * lev.states(dI + k, l) +
                        lev.states(dI + k, u) * lev.states(k, l));
        freq[gi][pi] = lev.energies(u) - lev.energies(l);
        elem[gi][pi] = amp * amp;
      }
  }

  double max_elem = 0.0;
  for (const auto& row : elem)
    for (double e : row) max_elem = std::max(max_elem, e);
  const double thresh = element_threshold_rel * max_elem;

  std::vector<std::pair<double, Transition>> found;
  int pi = 0;
  for (int l = 0; l < d; ++l) {
    for (int u = l + 1; u < d; ++u, ++pi) {
      for (size_t gi = 0; gi + 1 < grid.size(); ++gi) {
        const double fa = freq[gi][pi] - f0, fb = freq[gi + 1][pi] - f0;
        if (fa == 0.0 ? fb == 0.0 : (fa > 0.0) == (fb > 0.0)) continue;
        if (std::max(elem[gi][pi], elem[gi + 1][pi]) < thresh) continue;
        double a = grid[gi], b = grid[gi + 1];
        double va = fa;
        for (int it = 0; it < 60 && b - a > 1e-9; ++it) {
          const double m = 0.5 * (a + b);
          const double vm = pair_freq(sys, theta, m, l, u).freq - f0;
          if ((vm > 0.0) == (va > 0.0)) {
            a = m;
            va = vm;
          } else {
            b = m;
          }
        }
        const double B0 = 0.5 * (a + b);
        const auto lev = diagonalize(build_hamiltonian(sys, {B0, theta}));
        const auto trs = transitions(lev);
        // identify the located pair in the transition list
        for (const auto& t : trs) {
          if (t.lower_index == l && t.upper_index == u) {
            if (t.matrix_element >= thresh) found.push_back({B0, t});
            break;
          }
        }
      }
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // drop duplicates from adjacent brackets hitting the same root
  std::vector<std::pair<double, Transition>> out;
  for (const auto& f : found) {
    if (!out.empty() && std::abs(out.back().first - f.first) < 5e-9 &&
        out.back().second.lower_index == f.second.lower_index &&
        out.back().second.upper_index == f.second.upper_index)
      continue;
    out.push_back(f);
  }
  return out;
}

Eigen::VectorXd boltzmann_populations(const LevelDiagram& levels, double T) {
  if (!(T > 0.0)) throw std::domain_error("temperature must be positive");
  const double beta = consts::h * 1e9 / (consts::k_B * T); // per GHz
  const double e0 = levels.energies.minCoeff();
  Eigen::VectorXd p = (-(levels.energies.array() - e0) * beta).exp();
  p /= p.sum();
  return p;
}

double ensemble_coupling(const LevelDiagram& levels, const Transition& tr, double T,
                         double g_ens_ref, double T_ref) {
  if (!(T > 0.0) || !(T_ref > 0.0))
    throw std::domain_error("temperatures must be positive");
  const auto p = boltzmann_populations(levels, T);
  const auto pref = boltzmann_populations(levels, T_ref);
  const double dp = p(tr.lower_index) - p(tr.upper_index);
  const double dpref = pref(tr.lower_index) - pref(tr.upper_index);
  if (dpref <= 0.0)
    throw std::domain_error("reference population difference must be positive");
  return g_ens_ref * std::sqrt(std::max(0.0, dp) / dpref);
}

double infer_spin_temperature(const std::function<double(double)>& model,
                              double measured, double T_lo, double T_hi,
                              double T_base) {
  if (!(T_hi > T_lo) || !(T_lo > 0.0))
    throw std::domain_error("invalid temperature bracket");
  const int nscan = 2000;
  std::vector<double> roots;
  double prevT = T_lo, prevV = model(T_lo) - measured;
  for (int k = 1; k <= nscan; ++k) {
    const double Tk = T_lo * std::pow(T_hi / T_lo, double(k) / nscan);
    const double vk = model(Tk) - measured;
    if (prevV == 0.0) roots.push_back(prevT);
    else if ((prevV > 0.0) != (vk > 0.0)) {
      double a = prevT, b = Tk, va = prevV;
      for (int it = 0; it < 80 && (b - a) > 1e-7 * a; ++it) {
        const double m = 0.5 * (a + b);
        const double vm = model(m) - measured;
        if ((vm > 0.0) == (va > 0.0)) {
          a = m;
          va = vm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prevT = Tk;
    prevV = vk;
  }
  if (roots.empty())
    throw std::runtime_error("no spin-temperature root in bracket");
  double best = roots.front();
  for (double r : roots)
    if (std::abs(r - T_base) < std::abs(best - T_base)) best = r;
  return best;
}

} // namespace besr
