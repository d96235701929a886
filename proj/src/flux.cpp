#include "ionload/flux.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "ionload/constants.hpp"
#include "ionload/quad.hpp"
#include "ionload/rng.hpp"

namespace ionload::flux {

namespace k = constants;

namespace {

// exp(-4 z^2/w^2) < 1e-16 beyond |z| > cutoff_waists * w.
constexpr double cutoff_waists = 3.0349;  // sqrt(4 ln 10)

// 8-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the
// rule is symmetric). Used for the speed integral in capped quadrature.
constexpr double gl8_x[4] = {0.1834346424956498, 0.5255324099163290,
                             0.7966664774136267, 0.9602898564975363};
constexpr double gl8_w[4] = {0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

double transverse_scale2(double theta_p, double phi_p) {
  const double st = std::sin(theta_p);
  const double cp = std::cos(phi_p);
  return 1.0 - st * st * cp * cp;  // = w^2(rho=1)^-1 ... (rho/w)^2
}

}  // namespace

void Trajectory::validate() const {
  if (!(theta_p >= 0.0) || theta_p >= 0.5 * k::pi)
    throw ValidationError("trajectory: theta' must be in [0, pi/2)");
  if (!(phi_p >= 0.0) || phi_p >= 2.0 * k::pi)
    throw ValidationError("trajectory: phi' must be in [0, 2 pi)");
  if (!(speed > 0.0)) throw ValidationError("trajectory: speed must be positive");
  if (zeta0 < 0.0) throw ValidationError("trajectory: zeta0 must be nonnegative");
  if (entry_z < 0.0) throw ValidationError("trajectory: entry_z must be nonnegative");
}

void LoadingVolume::validate() const {
  if (!(waist > 0.0)) throw ValidationError("volume: waist must be positive");
  if (!(length > 0.0)) throw ValidationError("volume: length must be positive");
}

std::vector<Warning> LoadingVolume::geometry_warnings() const {
  std::vector<Warning> w;
  if (length < 5.0 * waist) w.push_back(Warning::CylinderAspect);
  return w;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::analytic_capped: return "analytic_capped";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

double effective_waist(double theta_p, double phi_p, double rho) {
  const double a2 = transverse_scale2(theta_p, phi_p);
  if (a2 < 1e-14)
    throw ValidationError("degenerate grazing trajectory (sin th' cos phi' = 1)");
  return rho / std::sqrt(a2);
}

double peak_prob_on_trajectory(double theta_p, double phi_p, double p0) {
  if (p0 < 0.0 || p0 > 1.0)
    throw ValidationError("peak_prob_on_trajectory: p0 must be in [0, 1]");
  const double a2 = transverse_scale2(theta_p, phi_p);
  if (a2 < 1e-14)
    throw ValidationError("degenerate grazing trajectory (sin th' cos phi' = 1)");
  const double st = std::sin(theta_p);
  const double sp = std::sin(phi_p);
  return p0 * std::exp(-4.0 * st * st * sp * sp / a2);
}

namespace {

// Survival product along a chord given precomputed (w, ptilde).
double survival_product(double ptilde, double w, double step, double zeta0) {
  if (ptilde <= 0.0) return 0.0;
  const double cut = cutoff_waists * w;
  const double jmin_f = std::ceil((-cut - zeta0) / step);
  const double jmax_f = std::floor((cut - zeta0) / step);
  const double count = jmax_f - jmin_f + 1.0;

  if (count > 1024.0) {
    // Slow atom: the pulse comb is dense on the beam scale (spacing below
    // w/150), so the log-survival sum equals the chord integral of
    // ln(1 - ptilde e^(-4 z^2/w^2)) divided by the spacing, with
    // corrections suppressed as exp(-(pi w / 2 step)^2).
    const int n = 512;
    const double h = 2.0 * cut / n;
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = -cut + (i + 0.5) * h;
      const double t = ptilde * std::exp(-4.0 * z * z / (w * w));
      if (t >= 1.0) return 1.0;
      integral += std::log1p(-t);
    }
    return -std::expm1(integral * h / step);
  }

  double log_survival = 0.0;
  const long jmin = static_cast<long>(jmin_f);
  const long jmax = static_cast<long>(jmax_f);
  if (jmin > jmax) {
    // No pulse within the 1e-16 cutoff; keep the nearest one so the result
    // decays smoothly instead of snapping to zero.
    const double z = std::round(-zeta0 / step) * step + zeta0;
    const double t = ptilde * std::exp(-4.0 * z * z / (w * w));
    return t >= 1.0 ? 1.0 : -std::expm1(std::log1p(-t));
  }
  for (long j = jmin; j <= jmax; ++j) {
    const double z = static_cast<double>(j) * step + zeta0;
    const double t = ptilde * std::exp(-4.0 * z * z / (w * w));
    if (t >= 1.0) return 1.0;
    log_survival += std::log1p(-t);
    if (log_survival < -40.0) return 1.0;  // 1 - e^-40 rounds to 1
  }
  return -std::expm1(log_survival);
}

}  // namespace

double p_net_product(const Trajectory& traj, double p0, double period,
                     double rho) {
  traj.validate();
  const double w = effective_waist(traj.theta_p, traj.phi_p, rho);
  const double ptilde = peak_prob_on_trajectory(traj.theta_p, traj.phi_p, p0);
  return survival_product(ptilde, w, traj.speed * period, traj.zeta0);
}

double p_net_integral(const Trajectory& traj, double p0, double period,
                      double rho, std::vector<Warning>* warnings) {
  traj.validate();
  const double w = effective_waist(traj.theta_p, traj.phi_p, rho);
  const double ptilde = peak_prob_on_trajectory(traj.theta_p, traj.phi_p, p0);
  const double vt = traj.speed * period;
  const double p_net = ptilde * 0.5 * std::sqrt(k::pi) * w / vt;
  if (warnings) {
    if (vt > w / 3.0) warnings->push_back(Warning::FastTransit);
    if (p_net > 0.1) warnings->push_back(Warning::Saturation);
  }
  return p_net;
}

double angular_constant(double rel_tol) {
  static std::map<double, double> cache;
  static std::mutex mutex;
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(rel_tol);
    if (it != cache.end()) return it->second;
  }
  // Substitute c = cos(theta'); fourfold phi' symmetry. The integrand is
  // bounded but has a direction-dependent limit at (c, phi') = (0, 0),
  // which the adaptive refinement localizes.
  const auto integrand = [](double c, double phi) {
    const double s2 = 1.0 - c * c;
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double a2 = 1.0 - s2 * cp * cp;
    if (a2 <= 0.0) return 0.0;  // corner point, measure zero
    return c / std::sqrt(a2) * std::exp(-4.0 * s2 * sp * sp / a2);
  };
  const auto result = quad::integrate_2d(integrand, 0.0, 1.0, 0.0, 0.5 * k::pi,
                                         rel_tol, rel_tol);
  const double value = 4.0 * result.value;
  std::lock_guard<std::mutex> lock(mutex);
  cache[rel_tol] = value;
  return value;
}

double flux_saturated(const Vapor& vapor) {
  return 0.25 * vapor.density * vapor.mean_speed();
}

namespace {

// Weak-regime probe the closed forms are guarded by: the transit
// probability of a slow atom (v = vbar/3) through the beam center. The
// saturation warning fires above 0.1; the quadrature switches to the
// exact survival-product integrand already above 0.005, where the
// linearized form's O(P_net/2) error would pass 0.25%.
double probe_value(const Vapor& vapor, const LoadingVolume& volume, double p0,
                   double period) {
  const double v = vapor.mean_speed() / 3.0;
  return p0 * 0.5 * std::sqrt(k::pi) * volume.waist / (v * period);
}

bool saturation_probe(const Vapor& vapor, const LoadingVolume& volume,
                      double p0, double period) {
  return probe_value(vapor, volume, p0, period) > 0.1;
}

void common_warnings(const Vapor& vapor, const LoadingVolume& volume,
                     double p0, double period, std::vector<Warning>& out) {
  for (const Warning w : volume.geometry_warnings()) out.push_back(w);
  if (vapor.mean_speed() * period > volume.waist / 3.0)
    out.push_back(Warning::FastTransit);
  if (saturation_probe(vapor, volume, p0, period))
    out.push_back(Warning::Saturation);
}

FluxResult finish(double flux_value, double std_error, Method method,
                  const Vapor& vapor, const LoadingVolume& volume,
                  std::vector<Warning> warnings) {
  FluxResult r;
  r.flux = flux_value;
  r.rate = flux_value * 2.0 * k::pi * volume.waist * volume.length;
  const double sat = flux_saturated(vapor);
  double eff = sat > 0.0 ? flux_value / sat : 0.0;
  if (eff > 1.0) {
    eff = 1.0;
    warnings.push_back(Warning::EfficiencyClamped);
  }
  r.efficiency = eff;
  r.method = method;
  r.std_error = std_error;
  r.warnings = std::move(warnings);
  return r;
}

}  // namespace

FluxResult flux_analytic(const Vapor& vapor, const LoadingVolume& volume,
                         double p0, double period) {
  vapor.validate();
  volume.validate();
  if (p0 < 0.0) throw ValidationError("flux: p0 must be nonnegative");
  std::vector<Warning> warnings;
  common_warnings(vapor, volume, p0, period, warnings);
  const double flux_value = vapor.density * volume.waist * p0 / (8.0 * period);
  return finish(flux_value, 0.0, Method::analytic, vapor, volume,
                std::move(warnings));
}

namespace {

// Capped-mode inner average: exact survival product over the flux-weighted
// Maxwell-Boltzmann speed (Y = a v^2 ~ Gamma(2), composite Gauss-Legendre
// in Y) and over the pulse phase where the transit is fast enough for the
// phase to matter.
double capped_inner_average(double ptilde, double w, double vbar,
                            double period) {
  const auto phase_averaged = [&](double y, double weight) {
    const double v = 0.5 * vbar * std::sqrt(k::pi * y);
    const double step = v * period;
    int n_phase = 1;
    if (step > 2.0 * w) n_phase = 24;
    else if (step > 0.5 * w) n_phase = 8;
    double mean_p = 0.0;
    for (int q = 0; q < n_phase; ++q) {
      const double zeta0 = (q + 0.5) * step / n_phase;
      mean_p += survival_product(ptilde, w, step, zeta0);
    }
    return weight * mean_p / n_phase;
  };

  double acc = 0.0;
  // First panel Y in [0, 1] via Y = q^2: removes the sqrt(Y) kink the
  // weak-regime 1/v behavior puts at Y = 0.
  for (int i = 0; i < 4; ++i) {
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      const double q = 0.5 + sgn * 0.5 * gl8_x[i];
      const double y = q * q;
      acc += phase_averaged(y, 0.5 * gl8_w[i] * 2.0 * q * y * std::exp(-y));
    }
  }
  static constexpr double panels[5] = {1.0, 3.0, 7.0, 15.0, 25.0};
  for (int p = 0; p < 4; ++p) {
    const double mid = 0.5 * (panels[p] + panels[p + 1]);
    const double half = 0.5 * (panels[p + 1] - panels[p]);
    for (int i = 0; i < 4; ++i) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const double y = mid + sgn * half * gl8_x[i];
        acc += phase_averaged(y, half * gl8_w[i] * y * std::exp(-y));
      }
    }
  }
  return acc;  // Gamma(2) weight integrates to 1 - e^-25(1+25) ~ 1
}

}  // namespace

FluxResult flux_quadrature(const Vapor& vapor, const LoadingVolume& volume,
                           double p0, double period,
                           const QuadratureOptions& opts) {
  vapor.validate();
  volume.validate();
  if (p0 < 0.0 || p0 > 1.0)
    throw ValidationError("flux_quadrature: p0 must be in [0, 1]");
  std::vector<Warning> warnings;
  common_warnings(vapor, volume, p0, period, warnings);

  bool capped = opts.mode == QuadratureOptions::Mode::capped;
  if (opts.mode == QuadratureOptions::Mode::automatic)
    capped = probe_value(vapor, volume, p0, period) > 0.005;

  if (!capped) {
    // P_net ~ 1/v separates the speed integral exactly; what remains is
    // the universal angular constant.
    const double a = angular_constant(opts.rel_tol);
    const double flux_value =
        vapor.density * volume.waist * p0 / (8.0 * period) * (a / std::sqrt(k::pi));
    return finish(flux_value, 0.0, Method::quadrature, vapor, volume,
                  std::move(warnings));
  }

  const double vbar = vapor.mean_speed();
  const double rho = volume.waist;
  const auto integrand = [&](double c, double phi) {
    const double s2 = 1.0 - c * c;
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double a2 = 1.0 - s2 * cp * cp;
    if (a2 <= 0.0) return 0.0;
    const double w = rho / std::sqrt(a2);
    const double ptilde = p0 * std::exp(-4.0 * s2 * sp * sp / a2);
    return c * capped_inner_average(ptilde, w, vbar, period);
  };
  // flux = Phi0 * (1/pi) * 4 * int_{[0,1]x[0,pi/2]} c <P_net> dc dphi
  const double tol = std::max(opts.rel_tol, 1e-3);  // survival products are costly
  const auto result = quad::integrate_2d(integrand, 0.0, 1.0, 0.0, 0.5 * k::pi,
                                         tol, tol * k::pi / 4.0, 200'000'000);
  const double flux_value = flux_saturated(vapor) * 4.0 * result.value / k::pi;
  return finish(flux_value, 0.0, Method::quadrature, vapor, volume,
                std::move(warnings));
}

FluxResult flux_monte_carlo(const Vapor& vapor, const LoadingVolume& volume,
                            double p0, double period,
                            const MonteCarloOptions& opts) {
  vapor.validate();
  volume.validate();
  if (p0 < 0.0 || p0 > 1.0)
    throw ValidationError("flux_monte_carlo: p0 must be in [0, 1]");
  if (opts.n_samples < 10'000)
    throw ValidationError("flux_monte_carlo: n_samples must be >= 1e4");

  std::vector<Warning> warnings;
  common_warnings(vapor, volume, p0, period, warnings);

  const double vbar = vapor.mean_speed();
  const double rho = volume.waist;
  const long n = opts.n_samples;

  // Fixed-size blocks summed in index order make the reduction independent
  // of the thread count; per-trajectory counter-based streams make each
  // sample independent of scheduling.
  constexpr long block_size = 4096;
  const long n_blocks = (n + block_size - 1) / block_size;
  std::vector<double> block_sum(n_blocks, 0.0);
  std::vector<double> block_sum_sq(n_blocks, 0.0);

  const auto run_block = [&](long b) {
    const long begin = b * block_size;
    const long end = std::min(n, begin + block_size);
    double sum = 0.0, sum_sq = 0.0;
    for (long i = begin; i < end; ++i) {
      rng::Stream stream(opts.seed, static_cast<std::uint64_t>(i));
      // cosine-law direction: sin^2 theta' uniform
      const double st2 = stream.uniform();
      const double theta_p = std::asin(std::sqrt(st2));
      const double phi_p = 2.0 * k::pi * stream.uniform();
      // flux-weighted Maxwell-Boltzmann speed: a v^2 ~ Gamma(2, 1)
      const double y = -std::log(stream.uniform_pos() * stream.uniform_pos());
      const double speed = 0.5 * vbar * std::sqrt(k::pi * y);
      const double zeta0 = stream.uniform() * speed * period;
      const double st = std::sin(theta_p), cp = std::cos(phi_p),
                   sp = std::sin(phi_p);
      const double a2 = 1.0 - st * st * cp * cp;
      double p_net = 0.0;
      if (a2 > 1e-14 && p0 > 0.0) {
        const double w = rho / std::sqrt(a2);
        const double ptilde = p0 * std::exp(-4.0 * st * st * sp * sp / a2);
        p_net = survival_product(ptilde, w, speed * period, zeta0);
      }
      sum += p_net;
      sum_sq += p_net * p_net;
    }
    block_sum[b] = sum;
    block_sum_sq[b] = sum_sq;
  };

  int n_threads = opts.n_threads > 0
                      ? opts.n_threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1) {
    for (long b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&]() {
        for (long b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1))
          run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  double sum = 0.0, sum_sq = 0.0;
  for (long b = 0; b < n_blocks; ++b) {
    sum += block_sum[b];
    sum_sq += block_sum_sq[b];
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) /
                        (static_cast<double>(n) - 1.0));
  const double phi0 = flux_saturated(vapor);
  const double flux_value = phi0 * mean;
  const double std_error = phi0 * std::sqrt(var / static_cast<double>(n));
  return finish(flux_value, std_error, Method::monte_carlo, vapor, volume,
                std::move(warnings));
}

double loading_rate(const Vapor& vapor, const LoadingVolume& volume, double p0,
                    double period, std::vector<Warning>* warnings) {
  const FluxResult r = flux_analytic(vapor, volume, p0, period);
  if (warnings)
    warnings->insert(warnings->end(), r.warnings.begin(), r.warnings.end());
  return r.rate;
}

double efficiency(const LoadingVolume& volume, double p0, const Vapor& vapor,
                  double period, std::vector<Warning>* warnings) {
  volume.validate();
  vapor.validate();
  double eta = p0 * volume.waist / (2.0 * vapor.mean_speed() * period);
  if (warnings && saturation_probe(vapor, volume, p0, period))
    warnings->push_back(Warning::Saturation);
  if (eta > 1.0) {
    eta = 1.0;
    if (warnings) warnings->push_back(Warning::EfficiencyClamped);
  }
  return eta;
}

FluxResult evaluate(const Vapor& vapor, const LoadingVolume& volume, double p0,
                    double period, Method method, const MonteCarloOptions& mc,
                    const QuadratureOptions& quad_opts) {
  switch (method) {
    case Method::analytic:
    case Method::analytic_capped: {
      FluxResult r = flux_analytic(vapor, volume, std::min(p0, 1.0), period);
      const double sat = flux_saturated(vapor);
      if (r.flux > sat) {
        // The weak-regime closed form exceeded the kinetic bound; report
        // the bound and tag the method.
        r.flux = sat;
        r.rate = sat * 2.0 * k::pi * volume.waist * volume.length;
        r.efficiency = 1.0;
        r.method = Method::analytic_capped;
        if (std::find(r.warnings.begin(), r.warnings.end(),
                      Warning::Saturation) == r.warnings.end())
          r.warnings.push_back(Warning::Saturation);
      }
      return r;
    }
    case Method::quadrature:
      return flux_quadrature(vapor, volume, std::min(p0, 1.0), period,
                             quad_opts);
    case Method::monte_carlo:
      return flux_monte_carlo(vapor, volume, std::min(p0, 1.0), period, mc);
  }
  throw ValidationError("unknown evaluation method");
}

}  // namespace ionload::flux
