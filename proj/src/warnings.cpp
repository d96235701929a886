#include "ionload/warnings.hpp"

namespace ionload {

const char* warning_code(Warning w) {
  switch (w) {
    case Warning::RayleighRange: return "rayleigh_range";
    case Warning::CylinderAspect: return "cylinder_aspect";
    case Warning::PeriodNotLong: return "period_not_long";
    case Warning::PulseNotShort: return "pulse_not_short";
    case Warning::PiRateComparable: return "pi_rate_comparable";
    case Warning::CwStrong: return "cw_strong";
    case Warning::StrongFocus: return "strong_focus";
    case Warning::FastTransit: return "fast_transit";
    case Warning::Saturation: return "saturation";
    case Warning::EfficiencyClamped: return "efficiency_clamped";
  }
  return "unknown";
}

std::string join_warning_codes(const std::vector<Warning>& warnings) {
  std::string out;
  for (const Warning w : warnings) {
    if (!out.empty()) out += ';';
    out += warning_code(w);
  }
  return out;
}

}  // namespace ionload
