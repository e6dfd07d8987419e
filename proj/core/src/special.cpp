#include "overdamp/special.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "overdamp/errors.hpp"
#include "overdamp/tolerances.hpp"

namespace overdamp::num {
namespace {

double j1_series(double u) {
  const long double h = 0.5L * u;
  const long double h2 = h * h;
  long double term = h; // k = 0
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > h) break;
  }
  return static_cast<double>(sum);
}

double j1_asymptotic(double u) {
  // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! 8^k), mu = 4 nu^2 = 4
  constexpr double mu = 4.0;
  double p = 1.0;
  double q = 0.0;
  double a = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * u);
    const double mag = std::abs(a);
    if (mag >= prev) break; // the series starts to diverge
    prev = mag;
    switch (k % 4) {
    case 1: q += a; break;
    case 2: p -= a; break;
    case 3: q -= a; break;
    case 0: p += a; break;
    }
    if (mag < 1e-17) break;
  }
  // cos/sin of (u - 3 pi / 4) without subtracting from a large argument
  const double su = std::sin(u);
  const double cu = std::cos(u);
  const double cchi = (su - cu) * std::numbers::sqrt2 * 0.5;
  const double schi = -(su + cu) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (std::numbers::pi * u)) * (p * cchi - q * schi);
}

} // namespace

double bessel_j1(double u) {
  if (!std::isfinite(u)) {
    std::ostringstream msg;
    msg << "bessel_j1: non-finite argument " << u;
    throw DomainError(msg.str());
  }
  const double au = std::abs(u);
  const double v = (au <= tol::kBesselSeriesLimit) ? j1_series(au) : j1_asymptotic(au);
  return std::copysign(1.0, u) * v;
}

double x_coth_x(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    return 1.0 + x * x / 3.0;
  }
  if (ax > tol::kCothSaturation) {
    return ax;
  }
  return x / std::tanh(x);
}

} // namespace overdamp::num
