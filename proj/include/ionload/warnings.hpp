#pragma once

#include <string>
#include <vector>

namespace ionload {

// Structured validity flags. Never silent, never fatal: the closed forms
// stay evaluable outside their regime, but callers see which assumption
// broke. The short codes are what lands in CSV "warnings" columns.
enum class Warning {
  RayleighRange,     // pi rho^2/lambda < 5 L: beam diverges over the trap
  CylinderAspect,    // L < 5 rho: loading volume is not a long cylinder
  PeriodNotLong,     // gamma*T < 10: atom may not reset between pulses
  PulseNotShort,     // gamma*tau > 0.1: decay during the pulse matters
  PiRateComparable,  // g < 10*Gamma: ionization competes with Rabi coupling
  CwStrong,          // Gamma_cw > 0.1*gamma
  StrongFocus,       // per-pulse focus probability > 0.1
  FastTransit,       // v*T > w/3: too few pulses per beam crossing
  Saturation,        // weak-regime closed form outside its validity
  EfficiencyClamped, // eta formula exceeded 1, clamped
};

const char* warning_code(Warning w);
std::string join_warning_codes(const std::vector<Warning>& warnings);

}  // namespace ionload
