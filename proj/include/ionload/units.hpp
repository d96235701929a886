#pragma once

#include <optional>
#include <string>

#include "ionload/constants.hpp"

// Unit handling at the external boundary. Internally everything is SI;
// these factors convert accepted input units to SI (multiply) and back
// (divide).
namespace ionload::units {

inline constexpr double pJ = 1e-12;    // J
inline constexpr double nJ = 1e-9;     // J
inline constexpr double fs = 1e-15;    // s
inline constexpr double ps = 1e-12;    // s
inline constexpr double ns = 1e-9;     // s
inline constexpr double us = 1e-6;     // s
inline constexpr double nm = 1e-9;     // m
inline constexpr double um = 1e-6;     // m
inline constexpr double mm = 1e-3;     // m
inline constexpr double kHz = 1e3;     // Hz
inline constexpr double MHz = 1e6;     // Hz
inline constexpr double GHz = 1e9;     // Hz
inline constexpr double THz = 1e12;    // Hz
inline constexpr double cm2 = 1e-4;    // m^2
inline constexpr double per_cm3 = 1e6; // m^-3
inline constexpr double W_per_cm2 = 1e4;  // W/m^2

// Dimension tags for config parsing; "what kind of quantity does this key
// expect" drives unit validation.
enum class Dim {
  Length,
  Time,
  Frequency,
  Energy,
  Area,
  NumberDensity,
  Pressure,
  Temperature,
  Mass,
  Intensity,
  Dimensionless,
};

// Converts "value unit" (e.g. "60", "pJ") to SI. Returns nullopt when the
// unit token is unknown or belongs to a different dimension.
std::optional<double> to_si(double value, const std::string& unit, Dim dim);

const char* dim_name(Dim dim);

}  // namespace ionload::units
