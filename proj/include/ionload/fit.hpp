#pragma once

#include <vector>

namespace ionload::fit {

struct PowerLaw {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

// Least-squares line through (log x, log y). Requires >= 3 points, all
// positive; throws ValidationError otherwise.
PowerLaw fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct GaussianPeak {
  double center = 0.0;
  double fwhm = 0.0;
  double peak = 0.0;
  int iterations = 0;
};

// Levenberg-Marquardt fit of y = A exp(-(x-mu)^2 / (2 s^2)), initialized
// from moments. Requires >= 5 points. Converges when the parameter update
// falls below 1e-8 (relative); throws ConvergenceError after the iteration
// budget (degenerate data such as a flat row ends up there).
GaussianPeak fit_gaussian_fwhm(const std::vector<double>& x,
                               const std::vector<double>& y);

}  // namespace ionload::fit
