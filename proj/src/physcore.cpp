#include "besr/physcore.hpp"

namespace besr {

const char* dim_name(Dim d) {
  switch (d) {
    case Dim::AngularFrequency: return "rad/s";
    case Dim::CyclicFrequency: return "Hz";
    case Dim::MagneticField: return "T";
    case Dim::Temperature: return "K";
    case Dim::Time: return "s";
    case Dim::Length: return "m";
    case Dim::Density: return "m^-3";
    case Dim::Speed: return "m/s";
    case Dim::Dimensionless: return "1";
  }
  return "?";
}

static void require_same(Dim a, Dim b, const char* op) {
  if (a != b)
    throw std::invalid_argument(std::string("unit mismatch in ") + op + ": " +
                                dim_name(a) + " vs " + dim_name(b));
}

Quantity Quantity::operator+(const Quantity& o) const {
  require_same(unit, o.unit, "+");
  return {value + o.value, unit};
}

Quantity Quantity::operator-(const Quantity& o) const {
  require_same(unit, o.unit, "-");
  return {value - o.value, unit};
}

double Quantity::ratio(const Quantity& o) const {
  require_same(unit, o.unit, "ratio");
  return value / o.value;
}

Quantity Quantity::to_angular() const {
  if (unit == Dim::AngularFrequency) return *this;
  require_same(unit, Dim::CyclicFrequency, "to_angular");
  return {value * 2.0 * consts::pi, Dim::AngularFrequency};
}

Quantity Quantity::to_cyclic() const {
  if (unit == Dim::CyclicFrequency) return *this;
  require_same(unit, Dim::AngularFrequency, "to_cyclic");
  return {value / (2.0 * consts::pi), Dim::CyclicFrequency};
}

double thermal_x(double omega, double T) {
  if (!(omega > 0.0)) throw std::domain_error("thermal factor requires omega > 0");
  if (!(T > 0.0)) throw std::domain_error("thermal factor requires T > 0");
  return consts::hbar * omega / (2.0 * consts::k_B * T);
}

double thermal_factor(ThermalKind kind, double omega, double T) {
  const double x = thermal_x(omega, T);
  switch (kind) {
    case ThermalKind::Tanh:
      return x > 350.0 ? 1.0 : std::tanh(x);
    case ThermalKind::Coth:
      return x > 350.0 ? 1.0 : 1.0 / std::tanh(x);
    case ThermalKind::Sech2: {
      if (x > 350.0) return 0.0;
      const double c = std::cosh(x);
      return 1.0 / (c * c);
    }
  }
  throw std::logic_error("unreachable thermal kind");
}

} // namespace besr
