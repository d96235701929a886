#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "ionload/errors.hpp"

// Embedded Dormand-Prince 5(4) with adaptive step size. Small fixed-size
// states only; the caller owns segmentation (we never step across a
// discontinuity of the right-hand side — integrate each smooth window
// separately).
namespace ionload::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepStats {
  int accepted = 0;
  int rejected = 0;
  double max_err = 0.0;  // largest accepted normalized error estimate
};

// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). rtol is the relative
// tolerance; atol = rtol * atol_scale guards components passing through
// zero. Calls observer(t, y) after each accepted step when provided.
// Throws ConvergenceError if the step size underflows before reaching t1.
template <std::size_t N, class F, class Observer>
State<N> integrate(F&& f, State<N> y, double t0, double t1, double rtol,
                   Observer&& observer, StepStats* stats = nullptr,
                   double atol_scale = 1e-2) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // 4th-order weights for the error estimate (b - bhat)
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double atol = rtol * atol_scale;
  const double span = t1 - t0;
  double t = t0;
  double h = span / 16.0;
  const double hmin = span * 1e-14;
  State<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

  f(t, y, k1);  // FSAL: k1 reused from the previous step's k7
  while (t < t1) {
    h = std::min(h, t1 - t);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    f(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    f(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(ei) / sc);
    }

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;
      observer(t, y);
      if (stats) {
        ++stats->accepted;
        stats->max_err = std::max(stats->max_err, err * rtol);
      }
    } else if (stats) {
      ++stats->rejected;
    }
    const double fac =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= fac;
    if (h < hmin && t < t1)
      throw ConvergenceError("ODE step size underflow", err * rtol);
  }
  return y;
}

template <std::size_t N, class F>
State<N> integrate(F&& f, State<N> y, double t0, double t1, double rtol,
                   StepStats* stats = nullptr) {
  return integrate<N>(std::forward<F>(f), y, t0, t1, rtol,
                      [](double, const State<N>&) {}, stats);
}

}  // namespace ionload::ode
