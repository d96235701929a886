#pragma once

#include <vector>

#include "ionload/types.hpp"
#include "ionload/warnings.hpp"

// Three-level pulse-train dynamics: ground S, intermediate P (radiative
// width gamma), and the ionized population fed at rate Gamma (pulsed) and
// Gamma_cw (cw) out of P. The per-pulse closed forms live here next to the
// ODE that validates them.
namespace ionload::bloch {

// Populations and the real S-P coherence amplitude.
struct BlochState {
  double pi_s = 1.0;
  double pi_p = 0.0;
  double pi_ion = 0.0;
  double c = 0.0;

  double population_sum() const { return pi_s + pi_p + pi_ion; }
};

// One pulse-train parameter set. Physical rates are the source of truth;
// theta, x and the cw ratio are derived views.
struct PulseParams {
  double g = 0.0;         // rad/s, resonant Rabi frequency during the pulse
  double gamma = 0.0;     // rad/s, P-state radiative linewidth
  double Gamma = 0.0;     // 1/s, pulsed photoionization rate from P
  double Gamma_cw = 0.0;  // 1/s, cw photoionization rate from P
  double tau = 0.0;       // s, pulse duration (square profile)
  double period = 0.0;    // s, pulse repetition period

  double theta() const { return g * tau; }
  double x() const { return 0.5 * Gamma * tau; }
  double cw_ratio() const { return gamma > 0.0 ? Gamma_cw / gamma : 0.0; }

  // Builds a concrete parameter set from the dimensionless description
  // (theta, x, Gamma_cw/gamma) using tau as the unit of time.
  static PulseParams from_dimensionless(double theta, double x,
                                        double cw_ratio, double gamma_tau = 1e-3,
                                        double period_over_tau = 5e4);

  void validate() const;
};

// Flags for the assumptions behind the closed forms: T >> 1/gamma >> tau,
// g >> Gamma, Gamma_cw << gamma.
std::vector<Warning> validity_warnings(const PulseParams& p);

// Result of a pulse-train integration: the state sampled at every pulse
// period boundary (samples[k] is t = k*T, samples[0] the initial state),
// plus worst-case invariant drift observed at the integrator's own steps.
struct BlochRun {
  std::vector<BlochState> samples;
  double max_conservation_error = 0.0;  // max |pi_s+pi_p+pi_ion - 1|
  double min_population = 0.0;          // most negative population seen
};

// Integrates the pulse-train Bloch equations for n_pulses periods from
// pi_s = 1. The pulse window [0,tau) is integrated adaptively (relative
// tolerance tol, default 1e-10, valid range (0, 1e-6]); the dark segment
// [tau,T) uses its exact analytic solution, with the standard radiative
// decay of the coherence at (gamma+Gamma_cw)/2. Throws ConvergenceError
// when the tolerance cannot be met.
BlochRun integrate_bloch(const PulseParams& p, int n_pulses, double tol = 1e-10);

// Per-period ionization probability, exact solution of the pulse-window
// system (gamma neglected during the pulse, full post-pulse routing):
//   P = 1 - e^-x [ (th^2 - x^2 cos u)/u^2 + x sin(u)/u ]
//       + (e^-x/2) (Gcw/(Gcw+gamma)) (th^2/u^2) (1 - cos u),  u = sqrt(th^2-x^2).
// Evaluated through entire functions of u^2, so theta < x continues
// analytically (cos -> cosh, sin u/u -> sinh u/u) with no branch seam.
double p_ion_closed(const PulseParams& p);

// Weak-ionization limit (theta >> x):
//   P = 1 - e^-x [1 + x sin(theta)/theta] + e^-x (Gcw/2gamma)(1 - cos theta).
// The cw term adds: post-pulse population routed to the continuum.
double p_ion_simplified(const PulseParams& p);

// First-order-in-x forms: the exact bracket x(1 - sin th/th) and its
// small-angle quadratic approximation th^2 x / 8 (= th^2 Gamma tau / 16).
struct WeakIonization {
  double bracket = 0.0;
  double quadratic = 0.0;
  bool quadratic_within_25pct = false;
};
WeakIonization p_ion_weak(double theta, double x);

// Per-pulse ionization probability for an atom at the beam focus,
//   P0 = sigma gamma^2 E^2 tau / (8 pi^2 hbar omega I_sat rho^4),
// algebraically identical to (theta^2/16)(Gamma tau) built from
// peak_intensity / rabi_angle / ionization_rate.
double p_ion_focus(const PulsedLaser& pulse, const BeamGeometry& beam,
                   const Species& s, std::vector<Warning>* warnings = nullptr);

// Gaussian spectral weight on theta^2 for detuned scans: w(0)=1, FWHM equal
// to the transform-limit bandwidth 0.441/tau of the pulse.
double spectral_weight(double detuning_hz, double duration_s);

// sin(theta)/theta and 1 - sin(theta)/theta without cancellation.
double sinc(double theta);
double one_minus_sinc(double theta);

}  // namespace ionload::bloch
