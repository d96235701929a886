#include "ionload/bloch.hpp"

#include <algorithm>
#include <cmath>

#include "ionload/constants.hpp"
#include "ionload/ode.hpp"
#include "ionload/physics.hpp"

namespace ionload::bloch {

namespace k = constants;

namespace {

// (1 - cos(sqrt(v)))/v and sin(sqrt(v))/sqrt(v), entire in v = theta^2-x^2.
// Series below |v| ~ 3e-2 (next term < 1e-16 relative); hyperbolic branch
// for v < 0. Entirety is what makes p_ion_closed seamless across theta = x.
double cosm1_over(double v) {
  if (std::abs(v) < 3e-2) {
    return 0.5 - v / 24.0 + v * v / 720.0 - v * v * v / 40320.0;
  }
  if (v > 0.0) return (1.0 - std::cos(std::sqrt(v))) / v;
  const double w = std::sqrt(-v);
  return (std::cosh(w) - 1.0) / (-v);
}

double sinc_sqrt(double v) {
  if (std::abs(v) < 3e-2) {
    return 1.0 - v / 6.0 + v * v / 120.0 - v * v * v / 5040.0;
  }
  if (v > 0.0) {
    const double u = std::sqrt(v);
    return std::sin(u) / u;
  }
  const double w = std::sqrt(-v);
  return std::sinh(w) / w;
}

}  // namespace

double sinc(double theta) { return sinc_sqrt(theta * theta); }

double one_minus_sinc(double theta) {
  const double t2 = theta * theta;
  if (t2 < 3e-2) {
    return t2 / 6.0 - t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0;
  }
  return 1.0 - std::sin(theta) / theta;
}

PulseParams PulseParams::from_dimensionless(double theta, double x,
                                            double cw_ratio, double gamma_tau,
                                            double period_over_tau) {
  PulseParams p;
  p.tau = 1.0;
  p.g = theta;
  p.Gamma = 2.0 * x;
  p.gamma = gamma_tau;
  p.Gamma_cw = cw_ratio * gamma_tau;
  p.period = period_over_tau;
  p.validate();
  return p;
}

void PulseParams::validate() const {
  if (g < 0.0 || gamma < 0.0 || Gamma < 0.0 || Gamma_cw < 0.0)
    throw ValidationError("pulse params: rates must be nonnegative");
  if (!(tau > 0.0)) throw ValidationError("pulse params: tau must be positive");
  if (!(period > tau))
    throw ValidationError("pulse params: period must exceed tau");
}

std::vector<Warning> validity_warnings(const PulseParams& p) {
  std::vector<Warning> w;
  // gamma T = 5 leaves e^-5 ~ 0.7% of the excited population alive at the
  // next pulse; the reference Cd system sits at gamma T ~ 7.
  if (p.gamma * p.period < 5.0) w.push_back(Warning::PeriodNotLong);
  if (p.gamma * p.tau > 0.1) w.push_back(Warning::PulseNotShort);
  if (p.Gamma > 0.0 && p.g < 10.0 * p.Gamma)
    w.push_back(Warning::PiRateComparable);
  if (p.gamma > 0.0 && p.Gamma_cw > 0.1 * p.gamma)
    w.push_back(Warning::CwStrong);
  return w;
}

BlochRun integrate_bloch(const PulseParams& p, int n_pulses, double tol) {
  p.validate();
  if (n_pulses < 1) throw ValidationError("integrate_bloch: n_pulses >= 1");
  if (!(tol > 0.0) || tol > 1e-6)
    throw ValidationError("integrate_bloch: tol must be in (0, 1e-6]");

  // State order: pi_s, pi_p, pi_ion, c.
  const auto rhs = [&p](double, const ode::State<4>& y, ode::State<4>& dy) {
    dy[0] = -p.g * y[3] + p.gamma * y[1];
    dy[1] = p.g * y[3] - (p.Gamma + p.Gamma_cw + p.gamma) * y[1];
    dy[2] = (p.Gamma + p.Gamma_cw) * y[1];
    dy[3] = -0.5 * p.g * (y[1] - y[0]) - 0.5 * p.Gamma * y[3];
  };

  BlochRun run;
  run.samples.reserve(static_cast<std::size_t>(n_pulses) + 1);
  ode::State<4> y{1.0, 0.0, 0.0, 0.0};
  run.samples.push_back({y[0], y[1], y[2], y[3]});

  const auto track = [&run](const ode::State<4>& s) {
    run.max_conservation_error = std::max(
        run.max_conservation_error, std::abs(s[0] + s[1] + s[2] - 1.0));
    run.min_population =
        std::min({run.min_population, s[0], s[1], s[2]});
  };

  const double dark = p.period - p.tau;
  const double loss = p.gamma + p.Gamma_cw;  // P-state width between pulses
  const double decay = std::exp(-loss * dark);
  const double branch_ion = loss > 0.0 ? p.Gamma_cw / loss : 0.0;
  const double branch_ground = loss > 0.0 ? p.gamma / loss : 0.0;

  for (int pulse = 0; pulse < n_pulses; ++pulse) {
    y = ode::integrate<4>(
        rhs, y, 0.0, p.tau, tol,
        [&track](double, const ode::State<4>& s) { track(s); });
    // Dark segment, exact: pi_p decays at gamma+Gamma_cw and routes to the
    // ground and ionized states; the coherence carries half that width.
    const double released = y[1] * (1.0 - decay);
    y[0] += branch_ground * released;
    y[2] += branch_ion * released;
    y[1] *= decay;
    y[3] *= std::exp(-0.5 * loss * dark);
    track(y);
    run.samples.push_back({y[0], y[1], y[2], y[3]});
  }
  return run;
}

double p_ion_closed(const PulseParams& p) {
  const double theta = p.theta();
  const double x = p.x();
  const double v = theta * theta - x * x;
  const double kv = cosm1_over(v);
  const double sv = sinc_sqrt(v);
  const double ex = std::exp(-x);
  // Pulsed-laser part: exact pulse-window solution plus full post-pulse
  // decay of the leftover P population.
  double prob = 1.0 - ex * (1.0 + x * x * kv + x * sv);
  // cw part: fraction Gcw/(Gcw+gamma) of the leftover P population
  // (theta^2 kv (1-...) = (theta^2/u^2)(1-cos u)/... times 1/2).
  const double denom = p.Gamma_cw + p.gamma;
  if (p.Gamma_cw > 0.0 && denom > 0.0) {
    prob += 0.5 * ex * (p.Gamma_cw / denom) * theta * theta * kv;
  }
  // Clamp only numerical epsilon excursions.
  if (prob < 0.0 && prob > -1e-12) prob = 0.0;
  if (prob > 1.0 && prob < 1.0 + 1e-12) prob = 1.0;
  return prob;
}

double p_ion_simplified(const PulseParams& p) {
  const double theta = p.theta();
  const double x = p.x();
  const double ex = std::exp(-x);
  double prob = 1.0 - ex * (1.0 + x * sinc(theta));
  if (p.gamma > 0.0 && p.Gamma_cw > 0.0) {
    prob += ex * (0.5 * p.Gamma_cw / p.gamma) * (1.0 - std::cos(theta));
  }
  if (prob < 0.0 && prob > -1e-12) prob = 0.0;
  return prob;
}

WeakIonization p_ion_weak(double theta, double x) {
  if (theta < 0.0 || x < 0.0)
    throw ValidationError("p_ion_weak: theta and x must be nonnegative");
  WeakIonization w;
  w.bracket = x * one_minus_sinc(theta);
  w.quadratic = theta * theta * x / 8.0;
  w.quadratic_within_25pct =
      w.bracket > 0.0 ? std::abs(w.quadratic / w.bracket - 1.0) <= 0.25
                      : theta == 0.0;
  return w;
}

double p_ion_focus(const PulsedLaser& pulse, const BeamGeometry& beam,
                   const Species& s, std::vector<Warning>* warnings) {
  const double isat = saturation_intensity(s);
  const double hw = k::hbar * pulse.omega();
  const double rho2 = beam.waist * beam.waist;
  const double p0 = s.sigma_pi * s.gamma * s.gamma * pulse.energy *
                    pulse.energy * pulse.duration /
                    (8.0 * k::pi * k::pi * hw * isat * rho2 * rho2);
  if (warnings && p0 > 0.1) warnings->push_back(Warning::StrongFocus);
  return p0;
}

double spectral_weight(double detuning_hz, double duration_s) {
  if (!(duration_s > 0.0))
    throw ValidationError("spectral_weight: duration must be positive");
  const double fwhm = k::gaussian_tbp / duration_s;
  const double sigma_nu = fwhm / k::fwhm_sigma_ratio;
  const double z = detuning_hz / sigma_nu;
  return std::exp(-0.5 * z * z);
}

}  // namespace ionload::bloch
