#include "ionload/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ionload/constants.hpp"
#include "ionload/errors.hpp"

namespace ionload::fit {

PowerLaw fit_power_law(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ValidationError("fit_power_law: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw ValidationError("fit_power_law: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw ValidationError("fit_power_law: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (std::abs(denom) < 1e-300)
    throw ValidationError("fit_power_law: degenerate abscissa");
  PowerLaw out;
  out.exponent = (dn * sxy - sx * sy) / denom;
  out.prefactor = std::exp((sy - out.exponent * sx) / dn);
  const double sst = syy - sy * sy / dn;
  const double ssr = out.exponent * (sxy - sx * sy / dn);
  out.r_squared = sst > 0.0 ? ssr / sst : 1.0;
  return out;
}

namespace {

struct GaussParams {
  double a, mu, s;
};

double model(const GaussParams& p, double x) {
  const double z = (x - p.mu) / p.s;
  return p.a * std::exp(-0.5 * z * z);
}

// 3x3 solve by Gaussian elimination with partial pivoting; returns false
// on a singular system.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3>& b) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-300) return false;
    std::swap(m[col], m[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int col = 2; col >= 0; --col) {
    for (int r = 0; r < col; ++r) {
      b[r] -= m[r][col] / m[col][col] * b[col];
      m[r][col] = 0.0;
    }
    b[col] /= m[col][col];
  }
  return true;
}

}  // namespace

GaussianPeak fit_gaussian_fwhm(const std::vector<double>& x,
                               const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ValidationError("fit_gaussian_fwhm: size mismatch");
  const std::size_t n = x.size();
  if (n < 5) throw ValidationError("fit_gaussian_fwhm: need at least 5 points");

  // Moment initialization over the positive part of the data.
  double w_sum = 0, mu0 = 0, peak0 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::max(y[i], 0.0);
    w_sum += w;
    mu0 += w * x[i];
    peak0 = std::max(peak0, y[i]);
  }
  if (!(w_sum > 0.0) || !(peak0 > 0.0))
    throw ConvergenceError("fit_gaussian_fwhm: no positive signal");
  mu0 /= w_sum;
  double var0 = 0;
  for (std::size_t i = 0; i < n; ++i)
    var0 += std::max(y[i], 0.0) * (x[i] - mu0) * (x[i] - mu0);
  var0 /= w_sum;
  if (!(var0 > 0.0))
    throw ConvergenceError("fit_gaussian_fwhm: zero-width moment estimate");
  GaussParams p{peak0, mu0, std::sqrt(var0)};

  double lambda = 1e-3;
  const int max_iter = 200;
  const double tol = 1e-8;
  double chi2 = 0.0;
  const auto chi_squared = [&](const GaussParams& q) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - model(q, x[i]);
      acc += r * r;
    }
    return acc;
  };
  chi2 = chi_squared(p);

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    // Jacobian-normal equations.
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (std::size_t i = 0; i < n; ++i) {
      const double z = (x[i] - p.mu) / p.s;
      const double e = std::exp(-0.5 * z * z);
      const double f = p.a * e;
      const double da = e;
      const double dmu = f * z / p.s;
      const double ds = f * z * z / p.s;
      const double r = y[i] - f;
      const double grad[3] = {da, dmu, ds};
      for (int a = 0; a < 3; ++a) {
        jtr[a] += grad[a] * r;
        for (int b = 0; b < 3; ++b) jtj[a][b] += grad[a] * grad[b];
      }
    }
    auto damped = jtj;
    for (int a = 0; a < 3; ++a) damped[a][a] *= 1.0 + lambda;
    std::array<double, 3> step = jtr;
    if (!solve3(damped, step))
      throw ConvergenceError("fit_gaussian_fwhm: singular normal equations");
    GaussParams trial{p.a + step[0], p.mu + step[1], p.s + step[2]};
    if (!(trial.s > 0.0)) trial.s = 0.5 * p.s;
    const double trial_chi2 = chi_squared(trial);
    if (trial_chi2 <= chi2) {
      const double rel =
          std::max({std::abs(step[0]) / std::max(std::abs(p.a), 1e-300),
                    std::abs(step[1]) / std::max(std::abs(p.mu), p.s),
                    std::abs(step[2]) / p.s});
      p = trial;
      chi2 = trial_chi2;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (rel < tol) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12)
        throw ConvergenceError("fit_gaussian_fwhm: failed to converge", chi2);
    }
  }
  if (iter == max_iter)
    throw ConvergenceError("fit_gaussian_fwhm: iteration budget exhausted",
                           chi2);
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  if (p.s > (*xmax - *xmin))
    throw ConvergenceError(
        "fit_gaussian_fwhm: fitted width exceeds the scanned range "
        "(degenerate, e.g. flat data)",
        chi2);
  GaussianPeak out;
  out.center = p.mu;
  out.fwhm = constants::fwhm_sigma_ratio * p.s;
  out.peak = p.a;
  out.iterations = iter + 1;
  return out;
}

}  // namespace ionload::fit
