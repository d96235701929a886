#pragma once

#include <functional>

namespace ionload::quad {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

// Adaptive 2D quadrature over an axis-aligned rectangle: tensor Simpson on
// each panel with a Richardson error estimate from one bisection level,
// worst-panel-first refinement. Converges on integrands with isolated
// corner non-smoothness (our angular integrand is bounded but has a
// direction-dependent limit at one corner). Throws ConvergenceError with
// the achieved estimate when the evaluation budget runs out.
Result integrate_2d(const std::function<double(double, double)>& f, double x0,
                    double x1, double y0, double y1, double rel_tol,
                    double abs_tol, long max_evaluations = 50'000'000);

}  // namespace ionload::quad
