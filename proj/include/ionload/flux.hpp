#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ionload/types.hpp"
#include "ionload/warnings.hpp"

// From the per-pulse focus probability P0 to trap loading: trajectory
// geometry through the Gaussian beam, pulse-train accumulation, thermal
// averaging (closed form, quadrature, Monte Carlo), and the loading rate
// and efficiency over the cylindrical loading volume.
namespace ionload::flux {

// A straight-line crossing of the cylindrical loading volume. theta_p is
// the polar angle from the inward surface normal, phi_p the azimuth around
// it (phi_p = 0 aims the trajectory through the beam axis). zeta0 is the
// position offset of the nearest laser pulse along the trajectory, entry_z
// the axial entry coordinate.
struct Trajectory {
  double theta_p;  // rad, [0, pi/2)
  double phi_p;    // rad, [0, 2 pi)
  double speed;    // m/s, > 0
  double zeta0;    // m, [0, v T)
  double entry_z;  // m, [0, L]

  void validate() const;
};

struct LoadingVolume {
  double waist;   // m, beam 1/e field radius rho
  double length;  // m, trap extent L along the beam

  void validate() const;
  std::vector<Warning> geometry_warnings() const;  // flags L < 5 rho
};

enum class Method { analytic, analytic_capped, quadrature, monte_carlo };
const char* method_name(Method m);

struct FluxResult {
  double flux = 0.0;        // m^-2 s^-1 of ionized atoms through the surface
  double rate = 0.0;        // 1/s over the loading volume, flux * 2 pi rho L
  double efficiency = 0.0;  // flux / (n0 vbar / 4), in [0, 1]
  Method method = Method::analytic;
  double std_error = 0.0;   // same units as flux; Monte Carlo only
  std::vector<Warning> warnings;
};

// Effective beam waist seen along a tilted chord,
//   w = rho / sqrt(1 - sin^2 th' cos^2 phi').
// Throws ValidationError on the zero-measure grazing degeneracy.
double effective_waist(double theta_p, double phi_p, double rho);

// Peak per-pulse probability on the chord: P0 reduced by the Gaussian
// offset of the closest approach,
//   P~0 = P0 exp(-4 sin^2 th' sin^2 phi' / (1 - sin^2 th' cos^2 phi')).
double peak_prob_on_trajectory(double theta_p, double phi_p, double p0);

// Exact survival product over the pulse train (Eq.-by-construction valid
// at any p0): P_net = 1 - prod_j [1 - P~0 exp(-4 zeta_j^2 / w^2)], with
// zeta_j = j v T + zeta0 and terms below 1e-16 * P~0 dropped.
double p_net_product(const Trajectory& traj, double p0, double period,
                     double rho);

// Many-pulses-per-transit limit: P_net = P~0 sqrt(pi/4) w / (v T). Flags
// a fast transit (v T > w/3) and a non-perturbative result (> 0.1).
double p_net_integral(const Trajectory& traj, double p0, double period,
                      double rho, std::vector<Warning>* warnings = nullptr);

// Universal angular factor of the thermal flux average,
//   A = int int sin th' cos th' (1-sin^2 th' cos^2 phi')^{-1/2}
//         exp(-4 sin^2 th' sin^2 phi'/(1-sin^2 th' cos^2 phi')) dth' dphi'
// over th' in [0,pi/2), phi' in [0,2pi). Evaluates to sqrt(pi)*erf(2):
// the closed-form flux quotes sqrt(pi), 0.47% above, by extending the
// transverse Gaussian beyond the entry surface. Cached after first call.
double angular_constant(double rel_tol = 1e-6);

// Saturated wall flux n0 vbar / 4: every atom crossing the beam ionizes.
double flux_saturated(const Vapor& vapor);

// Closed-form weak-regime flux Phi = n0 rho P0 / (8 T) and its derived
// rate/efficiency. Emits Saturation when the weak-regime probe
// P_net(theta'=0, v = vbar/3) exceeds 0.1.
FluxResult flux_analytic(const Vapor& vapor, const LoadingVolume& volume,
                         double p0, double period);

struct QuadratureOptions {
  double rel_tol = 1e-6;
  // auto: use the separated weak-regime integral unless the saturation
  // probe trips, then switch to the capped survival-product integrand.
  enum class Mode { automatic, weak, capped } mode = Mode::automatic;
};

// Thermal flux average by adaptive quadrature over the entry hemisphere.
// Weak mode separates the speed integral analytically (P_net ~ 1/v);
// capped mode integrates the exact survival product over speed (Gauss-
// Laguerre on the flux-weighted Maxwell-Boltzmann) and pulse phase, so it
// stays valid at any p0. Throws ConvergenceError on budget exhaustion.
FluxResult flux_quadrature(const Vapor& vapor, const LoadingVolume& volume,
                           double p0, double period,
                           const QuadratureOptions& opts = {});

struct MonteCarloOptions {
  long n_samples = 1'000'000;  // >= 1e4
  std::uint64_t seed = 0;
  int n_threads = 0;  // 0 = hardware concurrency
};

// Brute-force oracle: samples entering trajectories (cosine-law direction,
// flux-weighted Maxwell-Boltzmann speed, uniform pulse phase and entry
// point), evaluates the exact survival product per trajectory, and scales
// the sample mean by the saturated flux n0 vbar / 4. Bit-identical for a
// fixed seed regardless of thread count.
FluxResult flux_monte_carlo(const Vapor& vapor, const LoadingVolume& volume,
                            double p0, double period,
                            const MonteCarloOptions& opts);

// Loading rate over the cylinder, R = Phi * (2 pi rho L) = pi n0 rho^2 L P0/(4T).
double loading_rate(const Vapor& vapor, const LoadingVolume& volume, double p0,
                    double period, std::vector<Warning>* warnings = nullptr);

// Loading efficiency eta = P0 rho / (2 vbar T), clamped to 1 with a warning.
double efficiency(const LoadingVolume& volume, double p0, const Vapor& vapor,
                  double period, std::vector<Warning>* warnings = nullptr);

// Single-point evaluation used by the scan engine and CLI: picks the
// requested method, caps the analytic estimate at the saturated flux
// (tagging it analytic_capped), and fills rate/efficiency/warnings.
FluxResult evaluate(const Vapor& vapor, const LoadingVolume& volume, double p0,
                    double period, Method method,
                    const MonteCarloOptions& mc = {},
                    const QuadratureOptions& quad = {});

}  // namespace ionload::flux
