#pragma once

#include <vector>

#include "ionload/types.hpp"
#include "ionload/warnings.hpp"

// Single-atom and single-beam quantities shared by the dynamics and flux
// modules. All pure functions of their arguments.
namespace ionload {

// Two-level resonant saturation intensity, I_sat = pi h c gamma / (3 lambda^3).
// For Cd (gamma/2pi = 91 MHz, 228.9 nm) this is 0.99 W/cm^2.
double saturation_intensity(const Species& s);

// Peak intensity of a square-in-time pulse focused to a Gaussian spot with
// 1/e field radius rho: I = 2 E / (pi rho^2 tau).
double peak_intensity(const PulsedLaser& pulse, const BeamGeometry& beam);

// Resonant Rabi angle accumulated over one pulse, theta = g tau with
// g = gamma sqrt(I / 2 I_sat).
double rabi_angle(const PulsedLaser& pulse, const BeamGeometry& beam,
                  const Species& s);

// Photoionization rate out of the intermediate state, Gamma = I sigma/(hbar w).
double ionization_rate(double intensity, double sigma, double lambda);

// Ideal-gas number density n0 = P / (kB T).
double density_from_pressure(double pressure, double temperature);

// Doppler width of the vapor at wavelength lambda: vbar / lambda.
double doppler_width(const Vapor& vapor, double lambda);

// Transform-limited Gaussian pulse: tau_FWHM * dnu_FWHM = 0.441. The map is
// an involution, so the same call converts either direction.
double transform_limit(double fwhm);

// FWHM wavelength bandwidth -> FWHM frequency bandwidth at center lambda.
double bandwidth_wavelength_to_frequency(double dlambda_fwhm, double lambda);

// Geometry validity: flags a short Rayleigh range (pi rho^2/lambda < 5 L)
// and a stubby loading cylinder (L < 5 rho).
std::vector<Warning> beam_warnings(const BeamGeometry& beam, double lambda);

}  // namespace ionload
