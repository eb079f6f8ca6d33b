#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "besr/physcore.hpp"

namespace besr {

// Effective S = 1/2 Kramers doublet with uniaxial g (c axis unique) and an
// optional I = 7/2 nuclear spin with axial hyperfine coupling. Hyperfine
// constants are configuration inputs, not from the modeled experiment.
struct SpinSystem {
  double g_perp = 8.38;
  double g_par = 1.24;
  double nuclear_spin = 0.0;        // 0 or 3.5
  double hyperfine_A_perp = -873.0; // MHz, cyclic
  double hyperfine_A_par = -130.0;  // MHz, cyclic
  double isotope_abundance = 1.0;
  double spin_density = 5.0e23;     // m^-3
  bool nuclear_zeeman = false;
  double g_n = -0.1618; // bare nuclear g factor, used only if nuclear_zeeman

  int dim() const { return 2 * static_cast<int>(2.0 * nuclear_spin + 1.5); }
  void validate() const;
};

// B in the ac plane at angle theta from the c axis
struct FieldOrientation {
  double B_mag = 0.0; // T
  double theta = 0.0; // rad
};

struct LevelDiagram {
  Eigen::VectorXd energies; // GHz, ascending
  Eigen::MatrixXd states;   // columns are eigenvectors in |m_S> x |m_I| basis
};

struct Transition {
  int lower_index = 0;
  int upper_index = 0;
  double frequency = 0.0;      // GHz
  double matrix_element = 0.0; // |<u|Sx|l>|^2, max 1/4 for S=1/2
  std::optional<double> label; // shared m_I when both states carry a sharp one
};

double effective_g(const SpinSystem& sys, double theta);

// Transverse drive coupling relative to theta = 0, from the RMS of the two
// g components perpendicular to the static field.
double drive_projection(const SpinSystem& sys, double theta);

// Zeeman + hyperfine in GHz in the crystal frame (quantization along c).
// Real symmetric: B stays in the ac plane and Sy (x) Iy is real.
Eigen::MatrixXd build_hamiltonian(const SpinSystem& sys, const FieldOrientation& field);

LevelDiagram diagonalize(const Eigen::MatrixXd& H);

// All pair transitions with the Sx drive element, ascending in frequency
std::vector<Transition> transitions(const LevelDiagram& levels, double element_floor = 0.0);

std::vector<std::pair<double, Transition>> resonance_fields(
    const SpinSystem& sys, double theta, double omega0, double B_lo, double B_hi,
    double element_threshold_rel = 1e-3);

Eigen::VectorXd boltzmann_populations(const LevelDiagram& levels, double T);

double ensemble_coupling(const LevelDiagram& levels, const Transition& tr, double T,
                         double g_ens_ref, double T_ref);

// Root of model(T) = measured over [T_lo, T_hi]; for non-monotonic models the
// root nearest T_base wins.
double infer_spin_temperature(const std::function<double(double)>& model,
                              double measured, double T_lo, double T_hi,
                              double T_base);

} // namespace besr
