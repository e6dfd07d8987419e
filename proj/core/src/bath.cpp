#include "overdamp/bath.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "overdamp/errors.hpp"
#include "overdamp/quadrature.hpp"
#include "overdamp/special.hpp"
#include "overdamp/tolerances.hpp"

namespace overdamp::bath {

namespace {

const char* unit_name(CouplingUnit u) {
  return u == CouplingUnit::Action ? "action" : "frequency";
}

} // namespace

BathSpec::BathSpec(double kappa, double alpha, CouplingUnit unit, double hbar)
    : kappa_(kappa), alpha_(alpha), unit_(unit), hbar_(hbar) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("BathSpec: kappa must be finite and >= 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("BathSpec: alpha must be finite and > 0");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("BathSpec: hbar must be finite and > 0");
  }
}

void BathSpec::require_unit(CouplingUnit expected, const char* context) const {
  if (unit_ != expected) {
    std::ostringstream msg;
    msg << context << ": kappa carries " << unit_name(unit_) << " units, expected "
        << unit_name(expected);
    throw DomainError(msg.str());
  }
}

ThermalState::ThermalState(double beta) : beta_(beta) {
  if (!(beta > 0.0)) {
    throw DomainError("ThermalState: beta must be > 0 (or +inf for zero temperature)");
  }
}

double spectral_gamma(const BathSpec& spec, double omega) {
  if (!(omega >= 0.0)) {
    throw DomainError("spectral_gamma: omega must be >= 0");
  }
  const double a2 = spec.alpha() * spec.alpha();
  const double w2 = omega * omega;
  if (std::isinf(omega)) {
    return 2.0 / std::numbers::pi * spec.kappa() * a2;
  }
  return 2.0 / std::numbers::pi * spec.kappa() * a2 * w2 / (a2 + w2);
}

double spectral_j(const BathSpec& spec, double omega) {
  if (!(omega > 0.0)) {
    throw DomainError("spectral_j: omega must be > 0");
  }
  // gamma(w) / (2 w) without forming w^2 / w
  const double a2 = spec.alpha() * spec.alpha();
  return spec.kappa() * a2 * omega / (std::numbers::pi * (a2 + omega * omega));
}

double thermal_energy(const ThermalState& temp, double omega, double hbar) {
  if (temp.is_zero_temperature()) {
    return 0.5 * hbar * std::abs(omega);
  }
  const double x = 0.5 * temp.beta() * hbar * omega;
  return num::x_coth_x(x) / temp.beta();
}

CorrelatorValue correlator(const BathSpec& spec, const ThermalState& temp, double t) {
  if (t == 0.0) {
    throw DomainError("correlator: C(t) diverges logarithmically at t = 0 for the Drude bath");
  }
  const double at = std::abs(t);
  const double k = spec.kappa();
  const double a = spec.alpha();
  const double a2 = a * a;
  const double hbar = spec.hbar();
  if (k == 0.0) {
    return {0.0, 0.0};
  }
  // C: gamma hbar / (2w) coth(beta hbar w / 2) = (2/pi) kappa alpha^2 E_beta(w) / (alpha^2 + w^2)
  auto c_weight = [&](double w) {
    return 2.0 / std::numbers::pi * k * a2 * thermal_energy(temp, w, hbar) / (a2 + w * w);
  };
  // D: -gamma hbar / (2w) = -(kappa alpha^2 hbar / pi) w / (alpha^2 + w^2)
  auto d_weight = [&](double w) { return -k * a2 * hbar / std::numbers::pi * w / (a2 + w * w); };

  const double head = tol::kCorrelatorHeadCutoffs * a;
  const auto c = num::fourier_integral(c_weight, 0.0, at, num::Trig::Cos, head);
  const auto d = num::fourier_integral(d_weight, 0.0, at, num::Trig::Sin, head);
  return {c.value, std::copysign(1.0, t) * d.value};
}

CorrelatorValue correlator_high_temperature(const BathSpec& spec, const ThermalState& temp,
                                            double t) {
  const double decay = std::exp(-spec.alpha() * std::abs(t));
  const double c = temp.is_zero_temperature()
                       ? 0.0
                       : spec.kappa() * spec.alpha() / temp.beta() * decay;
  const double sgn = (t > 0.0) ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  const double d = -0.5 * spec.hbar() * spec.kappa() * spec.alpha() * spec.alpha() * decay * sgn;
  return {c, d};
}

double correlator_ft(const BathSpec& spec, const ThermalState& temp, double omega) {
  if (omega == 0.0 || !std::isfinite(omega)) {
    throw DomainError("correlator_ft: omega must be finite and nonzero (use correlator_ft_zero_limit)");
  }
  const double aw = std::abs(omega);
  // gamma(|w|) hbar / (2 |w|)
  const double base = spectral_j(spec, aw) * spec.hbar();
  if (temp.is_zero_temperature()) {
    return omega > 0.0 ? base : 0.0;
  }
  const double y = temp.beta() * spec.hbar() * aw;
  // (coth(y/2) + 1)/2 = 1/(1 - e^{-y}),  (1 - coth(y/2))/2 = e^{-y}/(1 - e^{-y}) for y > 0
  const double occupation = -1.0 / std::expm1(-y);
  if (omega > 0.0) {
    return base * occupation;
  }
  return base * occupation * std::exp(-y);
}

double correlator_ft_zero_limit(const BathSpec& spec, const ThermalState& temp) {
  if (temp.is_zero_temperature()) {
    return 0.0;
  }
  return spec.kappa() / (std::numbers::pi * temp.beta());
}

double correlator_ft_high_temperature(const BathSpec& spec, const ThermalState& temp,
                                      double omega) {
  if (omega == 0.0) {
    return correlator_ft_zero_limit(spec, temp);
  }
  const double a2 = spec.alpha() * spec.alpha();
  const double classical =
      temp.is_zero_temperature()
          ? 0.0
          : spec.kappa() * a2 / (std::numbers::pi * temp.beta() * (a2 + omega * omega));
  const double odd = 0.5 * spec.hbar() * std::copysign(spectral_j(spec, std::abs(omega)), omega);
  return classical + odd;
}

} // namespace overdamp::bath
