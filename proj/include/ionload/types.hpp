#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "ionload/constants.hpp"
#include "ionload/errors.hpp"

// Core domain records. All SI internally; unit conversion happens at the
// config/CLI boundary (see units.hpp). Everything here is immutable after
// construction and safe to share across threads.
namespace ionload {

// A neutral atom species for resonance-assisted two-photon ionization:
// 1S0 -> 1P1 at lambda_sp, then 1P1 -> continuum (threshold lambda_ion).
struct Species {
  std::string name;
  double lambda_sp;   // m, 1S0 -> 1P1 transition wavelength
  double lambda_ion;  // m, ground state -> continuum threshold
  double gamma;       // rad/s, 1P1 radiative linewidth (angular)
  double sigma_pi;    // m^2, 1P1 photoionization cross section
  double mass;        // kg

  void validate() const {
    if (!(lambda_sp > 0.0) || !(lambda_ion > 0.0))
      throw ValidationError("species wavelengths must be positive");
    if (!(lambda_sp > lambda_ion))
      throw ValidationError("species: lambda_sp must exceed lambda_ion");
    if (!(gamma > 0.0)) throw ValidationError("species: gamma must be positive");
    if (!(sigma_pi > 0.0)) throw ValidationError("species: sigma_pi must be positive");
    if (!(mass > 0.0)) throw ValidationError("species: mass must be positive");
  }
};

// True when one photon at lambda_sp can also reach the continuum from the
// intermediate state, i.e. the 1P1 level sits at or above the midpoint:
// 2/lambda_sp >= 1/lambda_ion. (Yb fails this by a hair.)
inline bool two_photon_feasible(const Species& s) {
  return 2.0 / s.lambda_sp >= 1.0 / s.lambda_ion;
}

// Pulse train: square temporal profile of duration tau, one pulse per
// period T, pulse energy E at center wavelength lambda_center.
struct PulsedLaser {
  double lambda_center;  // m
  double energy;         // J
  double duration;       // s
  double period;         // s

  void validate() const {
    if (!(lambda_center > 0.0)) throw ValidationError("laser: wavelength must be positive");
    if (!(duration > 0.0)) throw ValidationError("laser: duration must be positive");
    if (!(period > duration)) throw ValidationError("laser: period must exceed duration");
    if (energy < 0.0) throw ValidationError("laser: energy must be nonnegative");
  }

  double rep_rate() const { return 1.0 / period; }
  double omega() const { return 2.0 * constants::pi * constants::c / lambda_center; }
};

// Optional cw ionization laser (the Doppler-cooling beam).
struct CwLaser {
  double intensity;  // W/m^2
  double lambda;     // m
  double sigma_cw;   // m^2, photoionization cross section at this wavelength

  void validate() const {
    if (intensity < 0.0) throw ValidationError("cw laser: intensity must be nonnegative");
    if (!(lambda > 0.0)) throw ValidationError("cw laser: wavelength must be positive");
    if (!(sigma_cw > 0.0)) throw ValidationError("cw laser: sigma must be positive");
  }

  double omega() const { return 2.0 * constants::pi * constants::c / lambda; }
};

// Focused beam crossing the trap: waist rho is the 1/e electric-field
// radius, overlap_length L the trap extent along the beam.
struct BeamGeometry {
  double waist;           // m
  double overlap_length;  // m

  void validate() const {
    if (!(waist > 0.0)) throw ValidationError("beam: waist must be positive");
    if (!(overlap_length > 0.0))
      throw ValidationError("beam: overlap length must be positive");
  }
};

// Thermal background vapor. Construct from density or from pressure via
// the ideal gas law.
struct Vapor {
  double density;      // m^-3
  double temperature;  // K
  double mass;         // kg

  static Vapor from_density(double n0, double temperature, double mass) {
    Vapor v{n0, temperature, mass};
    v.validate();
    return v;
  }
  static Vapor from_pressure(double pressure, double temperature, double mass) {
    if (pressure < 0.0) throw ValidationError("vapor: pressure must be nonnegative");
    if (!(temperature > 0.0)) throw ValidationError("vapor: temperature must be positive");
    Vapor v{pressure / (constants::k_B * temperature), temperature, mass};
    v.validate();
    return v;
  }

  void validate() const {
    if (density < 0.0) throw ValidationError("vapor: density must be nonnegative");
    if (!(temperature > 0.0)) throw ValidationError("vapor: temperature must be positive");
    if (!(mass > 0.0)) throw ValidationError("vapor: mass must be positive");
  }

  // Maxwell-Boltzmann mean speed sqrt(8 kB T / (pi m)).
  double mean_speed() const {
    return std::sqrt(8.0 * constants::k_B * temperature / (constants::pi * mass));
  }
};

// Trap characteristics carried as preset data only (no trap dynamics).
// Printed ranges are kept losslessly as [min,max]; single printed values
// become degenerate pairs.
struct TrapPreset {
  using Range = std::pair<double, double>;

  std::string key;          // config token, e.g. "gaas_chip"
  std::string description;  // printed name
  Range depth_eV;
  Range size_um;            // linear dimension L along the beam
  double rf_drive_MHz;
  std::array<Range, 3> secular_MHz;  // nu_x, nu_y, nu_z

  // Scalar L for configs that select a preset: midpoint of the printed
  // range (the range is degenerate for all but the double-needle trap).
  double representative_size_m() const {
    return 0.5 * (size_um.first + size_um.second) * 1e-6;
  }

  void validate() const {
    if (!(size_um.first > 0.0) || size_um.second < size_um.first)
      throw ValidationError("trap: size range must be positive and ordered");
    if (depth_eV.second < depth_eV.first)
      throw ValidationError("trap: depth bounds must be ordered");
  }
};

}  // namespace ionload
