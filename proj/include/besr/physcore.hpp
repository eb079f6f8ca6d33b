#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace besr {

// SI defining constants; hbar derived so h = 2*pi*hbar holds to rounding.
namespace consts {
inline constexpr double pi    = 3.14159265358979323846;
inline constexpr double h     = 6.62607015e-34;   // J s
inline constexpr double hbar  = h / (2.0 * pi);   // J s
inline constexpr double k_B   = 1.380649e-23;     // J/K
inline constexpr double mu_B  = 9.2740100783e-24; // J/T
}

enum class Dim {
  AngularFrequency, // rad/s
  CyclicFrequency,  // Hz
  MagneticField,    // T
  Temperature,      // K
  Time,             // s
  Length,           // m
  Density,          // m^-3
  Speed,            // m/s
  Dimensionless,
};

const char* dim_name(Dim d);

// Minimal unit-tagged scalar. Internal canon is SI with angular frequency;
// the only cross-dimension conversion supported is cyclic <-> angular (2*pi).
struct Quantity {
  double value = 0.0;
  Dim unit = Dim::Dimensionless;

  Quantity() = default;
  Quantity(double v, Dim u) : value(v), unit(u) {}

  Quantity operator+(const Quantity& o) const;
  Quantity operator-(const Quantity& o) const;
  Quantity operator*(double s) const { return {value * s, unit}; }
  Quantity operator/(double s) const { return {value / s, unit}; }

  // dimensionless ratio of like quantities
  double ratio(const Quantity& o) const;

  Quantity to_angular() const;
  Quantity to_cyclic() const;
};

enum class ThermalKind { Tanh, Coth, Sech2 };

// tanh / coth / sech^2 of x = hbar*omega / (2 kB T), omega in rad/s.
// For x > 350: coth == 1 and sech^2 == 0 exactly (overflow policy).
double thermal_factor(ThermalKind kind, double omega, double T);

// the argument itself, exposed because several models reuse it
double thermal_x(double omega, double T);

} // namespace besr
