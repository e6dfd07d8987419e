#pragma once

// Reference implementations used only by the tests. They avoid the library's
// own kernels so that agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Composite Simpson rule with n (even) panels, in long double.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const long double h = (static_cast<long double>(b) - a) / n;
  long double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += (i % 2 ? 4.0L : 2.0L) * f(static_cast<double>(a + i * h));
  }
  return static_cast<double>(sum * h / 3.0L);
}

/// J1 by its alternating power series, 50 terms in long double.
inline double bessel_j1_series(double u) {
  const long double x = u / 2.0L;
  long double term = x;
  long double sum = term;
  for (int k = 1; k < 50; ++k) {
    term *= -x * x / (static_cast<long double>(k) * (k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

/// Roots of s^3 + c2 s^2 + c1 s + c0 from the companion matrix, polished by Newton steps.
inline std::vector<std::complex<double>> cubic_roots(double c2, double c1, double c0) {
  Eigen::Matrix3d companion;
  companion << -c2, -c1, -c0, 1, 0, 0, 0, 1, 0;
  const Eigen::Vector3cd ev = companion.eigenvalues();
  std::vector<std::complex<double>> roots(ev.data(), ev.data() + 3);
  for (auto& s : roots) {
    for (int it = 0; it < 8; ++it) {
      const auto p = ((s + c2) * s + c1) * s + c0;
      const auto dp = (3.0 * s + 2.0 * c2) * s + c1;
      if (std::abs(dp) == 0.0) break;
      s -= p / dp;
    }
  }
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

/// PV of int_a^b g(x) / (x - p) dx by singularity subtraction, then Simpson.
inline double pv_subtracted(const std::function<double(double)>& g, double p, double a, double b,
                            int n) {
  const double gp = g(p);
  auto smooth = [&](double x) {
    const double d = x - p;
    if (std::abs(d) < 1e-9 * (std::abs(p) + 1.0)) {
      const double h = 1e-5 * (std::abs(p) + 1.0);
      return (g(p + h) - g(p - h)) / (2.0 * h);
    }
    return (g(x) - gp) / d;
  };
  return simpson(smooth, a, b, n) + gp * std::log((b - p) / (p - a));
}

/// Greedy multiset match: max over a of the distance to its partner in b.
inline double multiset_distance(std::vector<std::complex<double>> a,
                                std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](auto u, auto v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

// Matsubara expansion of C(t) for the Drude bath, t > 0.
inline double matsubara_c(double kappa, double alpha, double beta, double hbar, double t) {
  long double sum = kappa * alpha / beta * std::exp(-alpha * t);
  const long double lead = 2.0L * kappa * alpha * alpha / beta;
  const int terms = 200000;
  for (int n = 1; n <= terms; ++n) {
    const long double nu = 2.0L * std::numbers::pi * n / (beta * hbar);
    sum += lead * (nu * std::exp(-nu * t) - alpha * std::exp(-alpha * t)) / (nu * nu - alpha * alpha);
  }
  // remaining -alpha e^{-alpha t} / nu^2 terms, summed in closed form to leading order
  const long double scale = beta * hbar / (2.0L * std::numbers::pi);
  sum -= lead * alpha * std::exp(-alpha * t) * scale * scale / terms;
  return static_cast<double>(sum);
}


} // namespace oracle
