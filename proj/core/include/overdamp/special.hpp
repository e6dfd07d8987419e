#pragma once

namespace overdamp::num {

/// Bessel function of the first kind, order one.
///
/// Power series (extended precision) for |u| <= tol::kBesselSeriesLimit,
/// Hankel asymptotic expansion truncated at its smallest term beyond.
/// Relative error below 1e-10 away from the zeros of J1, |u| <= 1e6.
double bessel_j1(double u);

/// (x/2) coth(x/2)-style helper: returns x * coth(x) with the x -> 0 limit 1.
double x_coth_x(double x);

} // namespace overdamp::num
