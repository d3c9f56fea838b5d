#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace secofdma {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Brent's method on a bracketing interval [a, b] with fa = f(a), fb = f(b),
// fa * fb <= 0. Stops when |f| <= ftol or the bracket shrinks below
// xtol * max(1, |x|). Inverse quadratic / secant steps with bisection
// fallback; the bracket never widens, so monotone budget-consumption
// functions keep plain-bisection semantics at a fraction of the evals.
template <class F>
RootResult brent_root(F&& f, double a, double b, double fa, double fb,
                      double xtol, double ftol, int max_iter) {
  RootResult res;
  if (fa == 0.0) return {a, fa, 0, true};
  if (fb == 0.0) return {b, fb, 0, true};

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa;
      d = b - a; e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || std::abs(fb) <= ftol) {
      return {b, fb, it, true};
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    res.iterations = it + 1;
  }
  res.x = b;
  res.fx = fb;
  res.converged = std::abs(fb) <= ftol;
  return res;
}

}  // namespace secofdma
