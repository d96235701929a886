#include "ionload/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "ionload/errors.hpp"

namespace ionload::quad {

namespace {

// Tensor Simpson on one rectangle (3x3 points).
double simpson9(const std::function<double(double, double)>& f, double x0,
                double x1, double y0, double y1, long& evals) {
  const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
  const double w = (x1 - x0) * (y1 - y0) / 36.0;
  evals += 9;
  return w * (f(x0, y0) + f(x1, y0) + f(x0, y1) + f(x1, y1) +
              4.0 * (f(xm, y0) + f(xm, y1) + f(x0, ym) + f(x1, ym)) +
              16.0 * f(xm, ym));
}

struct Panel {
  double x0, x1, y0, y1;
  double coarse;   // own Simpson value
  double refined;  // sum of the 4 children's Simpson values
  double err;      // |refined - coarse| / 15

  bool operator<(const Panel& other) const { return err < other.err; }
};

Panel make_panel(const std::function<double(double, double)>& f, double x0,
                 double x1, double y0, double y1, double coarse, long& evals) {
  const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
  const double c00 = simpson9(f, x0, xm, y0, ym, evals);
  const double c10 = simpson9(f, xm, x1, y0, ym, evals);
  const double c01 = simpson9(f, x0, xm, ym, y1, evals);
  const double c11 = simpson9(f, xm, x1, ym, y1, evals);
  const double refined = c00 + c10 + c01 + c11;
  return Panel{x0, x1, y0, y1, coarse, refined,
               std::abs(refined - coarse) / 15.0};
}

}  // namespace

Result integrate_2d(const std::function<double(double, double)>& f, double x0,
                    double x1, double y0, double y1, double rel_tol,
                    double abs_tol, long max_evaluations) {
  long evals = 0;
  const double min_dx = (x1 - x0) * 1e-8;
  const double min_dy = (y1 - y0) * 1e-8;

  // Seed with an 8x8 grid: a single top-level panel can produce an
  // accidentally tiny Richardson estimate far outside the asymptotic
  // regime and end the refinement at a wrong value.
  constexpr int seed_n = 8;
  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (int i = 0; i < seed_n; ++i) {
    for (int j = 0; j < seed_n; ++j) {
      const double a = x0 + (x1 - x0) * i / seed_n;
      const double b = x0 + (x1 - x0) * (i + 1) / seed_n;
      const double c = y0 + (y1 - y0) * j / seed_n;
      const double d = y0 + (y1 - y0) * (j + 1) / seed_n;
      const double coarse = simpson9(f, a, b, c, d, evals);
      Panel p = make_panel(f, a, b, c, d, coarse, evals);
      total += p.refined;
      total_err += p.err;
      heap.push(p);
    }
  }

  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (evals > max_evaluations)
      throw ConvergenceError("2d quadrature evaluation budget exhausted",
                             total_err);
    const Panel worst = heap.top();
    heap.pop();
    if (worst.x1 - worst.x0 < min_dx || worst.y1 - worst.y0 < min_dy) {
      // Cannot subdivide further; accept this panel's estimate as final.
      // If the remaining error still exceeds the tolerance once every
      // refinable panel is exhausted, the loop ends in the throw above.
      if (heap.empty())
        throw ConvergenceError("2d quadrature panel size underflow", total_err);
      continue;
    }
    const double xm = 0.5 * (worst.x0 + worst.x1);
    const double ym = 0.5 * (worst.y0 + worst.y1);
    // Children's coarse values were computed as part of the parent's
    // refinement; recompute per-child (cheap integrand) to keep the
    // bookkeeping simple and then refine each child one level.
    total -= worst.refined;
    total_err -= worst.err;
    const struct { double a, b, c, d; } quads[4] = {
        {worst.x0, xm, worst.y0, ym},
        {xm, worst.x1, worst.y0, ym},
        {worst.x0, xm, ym, worst.y1},
        {xm, worst.x1, ym, worst.y1}};
    for (const auto& q : quads) {
      const double coarse = simpson9(f, q.a, q.b, q.c, q.d, evals);
      Panel child = make_panel(f, q.a, q.b, q.c, q.d, coarse, evals);
      total += child.refined;
      total_err += child.err;
      heap.push(child);
    }
  }
  return Result{total, total_err, evals};
}

}  // namespace ionload::quad
