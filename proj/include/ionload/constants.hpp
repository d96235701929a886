#pragma once

// Physical constants, CODATA 2018 (SI). Pinned here so every module and
// every test references the same values.
namespace ionload::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double c = 299792458.0;            // m/s, exact
inline constexpr double h = 6.62607015e-34;         // J s, exact
inline constexpr double hbar = h / (2.0 * pi);      // J s
inline constexpr double k_B = 1.380649e-23;         // J/K, exact
inline constexpr double amu = 1.66053906660e-27;    // kg
inline constexpr double eV = 1.602176634e-19;       // J, exact
inline constexpr double torr = 101325.0 / 760.0;    // Pa

// Gaussian time-bandwidth product, FWHM conventions on both sides.
inline constexpr double gaussian_tbp = 0.441;

// FWHM = fwhm_sigma_ratio * sigma for a Gaussian.
inline constexpr double fwhm_sigma_ratio = 2.35482004503094938;  // 2 sqrt(2 ln 2)

}  // namespace ionload::constants
