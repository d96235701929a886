#include "ionload/units.hpp"

#include <unordered_map>

namespace ionload::units {

namespace {

struct UnitEntry {
  Dim dim;
  double factor;  // multiply to get SI
};

const std::unordered_map<std::string, UnitEntry>& unit_table() {
  static const std::unordered_map<std::string, UnitEntry> table = {
      // length
      {"m", {Dim::Length, 1.0}},
      {"cm", {Dim::Length, 1e-2}},
      {"mm", {Dim::Length, mm}},
      {"um", {Dim::Length, um}},
      {"µm", {Dim::Length, um}},
      {"nm", {Dim::Length, nm}},
      // time
      {"s", {Dim::Time, 1.0}},
      {"ms", {Dim::Time, 1e-3}},
      {"us", {Dim::Time, us}},
      {"ns", {Dim::Time, ns}},
      {"ps", {Dim::Time, ps}},
      {"fs", {Dim::Time, fs}},
      // frequency
      {"Hz", {Dim::Frequency, 1.0}},
      {"kHz", {Dim::Frequency, kHz}},
      {"MHz", {Dim::Frequency, MHz}},
      {"GHz", {Dim::Frequency, GHz}},
      {"THz", {Dim::Frequency, THz}},
      // energy
      {"J", {Dim::Energy, 1.0}},
      {"mJ", {Dim::Energy, 1e-3}},
      {"uJ", {Dim::Energy, 1e-6}},
      {"nJ", {Dim::Energy, nJ}},
      {"pJ", {Dim::Energy, pJ}},
      {"eV", {Dim::Energy, ionload::constants::eV}},
      // area
      {"m^2", {Dim::Area, 1.0}},
      {"cm^2", {Dim::Area, cm2}},
      // number density
      {"m^-3", {Dim::NumberDensity, 1.0}},
      {"cm^-3", {Dim::NumberDensity, per_cm3}},
      // pressure
      {"Pa", {Dim::Pressure, 1.0}},
      {"torr", {Dim::Pressure, ionload::constants::torr}},
      {"mbar", {Dim::Pressure, 100.0}},
      // temperature
      {"K", {Dim::Temperature, 1.0}},
      // mass
      {"kg", {Dim::Mass, 1.0}},
      {"u", {Dim::Mass, ionload::constants::amu}},
      {"amu", {Dim::Mass, ionload::constants::amu}},
      // intensity
      {"W/m^2", {Dim::Intensity, 1.0}},
      {"W/cm^2", {Dim::Intensity, W_per_cm2}},
      {"mW/cm^2", {Dim::Intensity, 10.0}},
  };
  return table;
}

}  // namespace

std::optional<double> to_si(double value, const std::string& unit, Dim dim) {
  if (unit.empty()) {
    if (dim == Dim::Dimensionless) return value;
    return std::nullopt;
  }
  if (dim == Dim::Dimensionless) return std::nullopt;
  const auto& table = unit_table();
  const auto it = table.find(unit);
  if (it == table.end() || it->second.dim != dim) return std::nullopt;
  return value * it->second.factor;
}

const char* dim_name(Dim dim) {
  switch (dim) {
    case Dim::Length: return "length";
    case Dim::Time: return "time";
    case Dim::Frequency: return "frequency";
    case Dim::Energy: return "energy";
    case Dim::Area: return "area";
    case Dim::NumberDensity: return "number density";
    case Dim::Pressure: return "pressure";
    case Dim::Temperature: return "temperature";
    case Dim::Mass: return "mass";
    case Dim::Intensity: return "intensity";
    case Dim::Dimensionless: return "dimensionless";
  }
  return "unknown";
}

}  // namespace ionload::units
