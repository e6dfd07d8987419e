#pragma once

#include <array>
#include <complex>
#include <functional>

namespace overdamp::num {

/// Roots of the monic cubic s^3 + c2 s^2 + c1 s + c0 with real coefficients.
struct CubicRoots {
  /// Real roots come first (ascending); a complex pair is stored as
  /// roots[1] = conj(roots[2]) with Im roots[1] > 0.
  std::array<std::complex<double>, 3> roots;
  int real_count = 0;            ///< 1 or 3
  double discriminant = 0.0;     ///< > 0: three distinct real roots, < 0: one real + pair
  bool multiple_root = false;    ///< discriminant zero to working precision
  double max_residual = 0.0;     ///< max |p(root)|
};

CubicRoots cubic_roots(double c2, double c1, double c0);

/// Discriminant 18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2 of s^3 + a s^2 + b s + c.
double cubic_discriminant(double c2, double c1, double c0);

/// Bisection on a bracketing interval [lo, hi] (f(lo) and f(hi) of opposite sign).
double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol,
              int max_iter = 200);

} // namespace overdamp::num
