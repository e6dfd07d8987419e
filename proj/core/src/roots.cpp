#include "overdamp/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "overdamp/errors.hpp"
#include "overdamp/tolerances.hpp"

namespace overdamp::num {
namespace {

using cplx = std::complex<double>;

template <typename T>
T eval_cubic(double c2, double c1, double c0, T s) {
  return ((s + c2) * s + c1) * s + c0;
}

template <typename T>
T eval_cubic_derivative(double c2, double c1, T s) {
  return (3.0 * s + 2.0 * c2) * s + c1;
}

// Newton steps that are only accepted while they reduce the residual.
template <typename T>
T polish(double c2, double c1, double c0, T s) {
  T best = s;
  double best_res = std::abs(eval_cubic(c2, c1, c0, s));
  for (int it = 0; it < 8 && best_res > 0.0; ++it) {
    const T d = eval_cubic_derivative(c2, c1, best);
    if (d == T(0)) break;
    const T next = best - eval_cubic(c2, c1, c0, best) / d;
    const double res = std::abs(eval_cubic(c2, c1, c0, next));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

double discriminant_scale(double a, double b, double c) {
  return std::abs(18.0 * a * b * c) + std::abs(4.0 * a * a * a * c) + std::abs(a * a * b * b) +
         std::abs(4.0 * b * b * b) + std::abs(27.0 * c * c);
}

} // namespace

double cubic_discriminant(double a, double b, double c) {
  return 18.0 * a * b * c - 4.0 * a * a * a * c + a * a * b * b - 4.0 * b * b * b - 27.0 * c * c;
}

CubicRoots cubic_roots(double c2, double c1, double c0) {
  if (!std::isfinite(c2) || !std::isfinite(c1) || !std::isfinite(c0)) {
    throw DomainError("cubic_roots: non-finite coefficient");
  }
  CubicRoots out;
  out.discriminant = cubic_discriminant(c2, c1, c0);
  const double scale = discriminant_scale(c2, c1, c0);
  out.multiple_root = std::abs(out.discriminant) <= tol::kMultipleRootRel * scale;

  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

  if (out.discriminant > 0.0 && p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    std::array<double, 3> r{};
    for (int k = 0; k < 3; ++k) {
      r[k] = polish(c2, c1, c0, m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
    std::sort(r.begin(), r.end());
    for (int k = 0; k < 3; ++k) out.roots[k] = r[k];
    out.real_count = 3;
  } else {
    // One dominant real root by Cardano (cancellation-free branch), then deflate.
    const double half_q = 0.5 * q;
    const double disc = half_q * half_q + p * p * p / 27.0;
    double y;
    if (disc >= 0.0) {
      const double big = -std::copysign(std::cbrt(std::abs(half_q) + std::sqrt(disc)), q);
      y = (big != 0.0) ? big - p / (3.0 * big) : 0.0;
    } else {
      // Only reachable through rounding next to a multiple root.
      const double m = 2.0 * std::sqrt(-p / 3.0);
      y = m * std::cos(std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0);
    }
    const double r = polish(c2, c1, c0, y - shift);
    const double b1 = c2 + r;
    const double b0 = (std::abs(r) > 1.0 && r != 0.0) ? -c0 / r : c1 + r * b1;
    const double qd = b1 * b1 - 4.0 * b0;
    if (qd < 0.0) {
      cplx z(-0.5 * b1, 0.5 * std::sqrt(-qd));
      z = polish(c2, c1, c0, z);
      if (z.imag() < 0.0) z = std::conj(z);
      out.roots = {cplx(r, 0.0), z, std::conj(z)};
      out.real_count = 1;
    } else {
      const double sq = std::sqrt(qd);
      const double t = -0.5 * (b1 + std::copysign(sq, b1));
      double r1 = t;
      double r2 = (t != 0.0) ? b0 / t : 0.0;
      r1 = polish(c2, c1, c0, r1);
      r2 = polish(c2, c1, c0, r2);
      std::array<double, 3> rr{r, r1, r2};
      std::sort(rr.begin(), rr.end());
      for (int k = 0; k < 3; ++k) out.roots[k] = rr[k];
      out.real_count = 3;
    }
  }
  for (const cplx& z : out.roots) {
    out.max_residual = std::max(out.max_residual, std::abs(eval_cubic(c2, c1, c0, z)));
  }
  return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol,
              int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream msg;
    msg << "bisect: no sign change on [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  for (int it = 0; it < max_iter && hi - lo > x_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace overdamp::num
