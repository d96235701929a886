#include "ionload/physics.hpp"

#include <cmath>

#include "ionload/constants.hpp"

namespace ionload {

namespace k = constants;

double saturation_intensity(const Species& s) {
  const double l = s.lambda_sp;
  return k::pi * k::h * k::c * s.gamma / (3.0 * l * l * l);
}

double peak_intensity(const PulsedLaser& pulse, const BeamGeometry& beam) {
  return 2.0 * pulse.energy /
         (k::pi * beam.waist * beam.waist * pulse.duration);
}

double rabi_angle(const PulsedLaser& pulse, const BeamGeometry& beam,
                  const Species& s) {
  const double intensity = peak_intensity(pulse, beam);
  return s.gamma * std::sqrt(intensity / (2.0 * saturation_intensity(s))) *
         pulse.duration;
}

double ionization_rate(double intensity, double sigma, double lambda) {
  // Gamma = I sigma / (hbar omega) with omega = 2 pi c / lambda.
  return intensity * sigma * lambda / (k::h * k::c);
}

double density_from_pressure(double pressure, double temperature) {
  if (!(temperature > 0.0))
    throw ValidationError("density_from_pressure: temperature must be positive");
  if (pressure < 0.0)
    throw ValidationError("density_from_pressure: pressure must be nonnegative");
  return pressure / (k::k_B * temperature);
}

double doppler_width(const Vapor& vapor, double lambda) {
  if (!(lambda > 0.0))
    throw ValidationError("doppler_width: wavelength must be positive");
  return vapor.mean_speed() / lambda;
}

double transform_limit(double fwhm) {
  if (!(fwhm > 0.0))
    throw ValidationError("transform_limit: input must be positive");
  return k::gaussian_tbp / fwhm;
}

double bandwidth_wavelength_to_frequency(double dlambda_fwhm, double lambda) {
  return k::c * dlambda_fwhm / (lambda * lambda);
}

std::vector<Warning> beam_warnings(const BeamGeometry& beam, double lambda) {
  std::vector<Warning> w;
  const double rayleigh = k::pi * beam.waist * beam.waist / lambda;
  if (rayleigh < 5.0 * beam.overlap_length) w.push_back(Warning::RayleighRange);
  if (beam.overlap_length < 5.0 * beam.waist) w.push_back(Warning::CylinderAspect);
  return w;
}

}  // namespace ionload
