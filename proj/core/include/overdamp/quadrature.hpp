#pragma once

#include <functional>
#include <limits>
#include <span>

#include "overdamp/tolerances.hpp"

namespace overdamp::num {

using RealFunction = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0; ///< estimated absolute error, always >= 0
  int panels = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// Either bound may be infinite; semi-infinite and infinite ranges are mapped
/// onto finite ones by x = a + u/(1-u). Converges when
/// error <= max(abs_tol, rel_tol * |value|). Throws NumericalError naming the
/// worst panel when max_panels is exhausted.
QuadratureResult adaptive_quadrature(const RealFunction& f, double a, double b,
                                     double rel_tol = tol::kQuadratureRel,
                                     double abs_tol = tol::kQuadratureAbsFloor,
                                     int max_panels = tol::kQuadratureMaxPanels);

enum class Trig { Cos, Sin };

/// Integral of f(x) * trig(freq * x) over [a, inf).
///
/// [a, head_end] is integrated adaptively; the tail is summed over half-period
/// panels and the partial sums are accelerated with Wynn's epsilon algorithm.
/// f must decay (possibly slowly, e.g. like 1/x) for the tail to converge.
QuadratureResult fourier_integral(const RealFunction& f, double a, double freq, Trig kind,
                                  double head_end, double rel_tol = tol::kQuadratureRel);

/// Cauchy principal value of the integral of f over [a, b], where f has simple
/// poles at the given locations (strictly inside (a, b)). Bounds may be infinite.
///
/// Each pole p is enclosed in a symmetric window [p-h, p+h] on which the
/// integral is folded into the regular form int_0^h [f(p+u) + f(p-u)] du.
/// Throws DomainError if a pole sits on (or outside) an endpoint.
double pv_integral(const RealFunction& f, std::span<const double> poles, double a, double b,
                   double rel_tol = tol::kPrincipalValueRel);

/// Pairwise (cascade) summation; result depends only on the order of the input.
double pairwise_sum(std::span<const double> values);

} // namespace overdamp::num
