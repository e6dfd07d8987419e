#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "overdamp/bath.hpp"
#include "overdamp/tolerances.hpp"

namespace overdamp::spin {

/// H_S = (hbar omega0 / 2) sigma_z, coupled to the bath through sigma_x.
class SpinModel {
public:
  explicit SpinModel(double omega0, double hbar = 1.0);

  double omega0() const { return omega0_; }
  double hbar() const { return hbar_; }

private:
  double omega0_;
  double hbar_;
};

/// Expectations of sigma_x, sigma_y, sigma_z.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// Bloch trajectory sampled on a time grid.
struct Trajectory {
  std::vector<double> t;
  std::vector<BlochVector> b;
};

struct MarkovRates {
  double gamma = 0.0;
  double omega2 = 0.0;          ///< Omega^2, negative when overdamped
  std::optional<double> z_inf;  ///< empty when Gamma = 0 (no relaxation)

  double omega2_plus_gamma2() const { return omega2 + gamma * gamma; }
};

/// s1..s4; s1 = 0, s2 = -2 Gamma, s3 the slowest oscillatory/overdamped rate.
using ModeSet = std::array<std::complex<double>, 4>;

enum class Regime { Normal, Critical, Overdamped };

std::string_view regime_name(Regime r);

using SpectralFunction = std::function<double(double)>;
using CorrelatorFunction = std::function<bath::CorrelatorValue(double)>;

/// Markovian Redfield rates from the bath spectral density alpha~(w).
/// `support`, when given, is an interval outside which alpha~ vanishes; its
/// edges are used as quadrature breakpoints for the principal value.
/// DomainError when alpha~(w0) + alpha~(-w0) = 0.
MarkovRates markov_rates(const SpinModel& spin, const SpectralFunction& bath_ft,
                         std::optional<std::pair<double, double>> support = std::nullopt);

/// Finite-horizon rates with the time integrals cut at t.
struct TimeDependentRates {
  double gamma = 0.0;
  double omega2 = 0.0;
  double gamma_z_inf = 0.0;
};

TimeDependentRates rates_time_dependent(const SpinModel& spin, const CorrelatorFunction& correlator,
                                        double t);

/// Closed-form Markovian trajectory; analytic continuation for Omega^2 <= 0.
std::vector<BlochVector> evolve(const MarkovRates& rates, const SpinModel& spin,
                                const BlochVector& b0, std::span<const double> times);

ModeSet modes(const MarkovRates& rates);

/// Normal / Overdamped when |Omega^2| exceeds tol * max(omega0^2, Gamma^2).
Regime classify(const MarkovRates& rates, const SpinModel& spin,
                double tol = tol::kCriticalBand);

/// Smallest coupling in [lo, hi] at which Omega^2 changes sign, by bisection on
/// `rates_at(kappa)`. DomainError without a sign change.
double locate_critical_coupling(const std::function<MarkovRates(double)>& rates_at, double lo,
                                double hi, double rel_tol = 1e-10);

// Spin-boson model with the Drude bath (kappa in action units).

/// alpha~(w) of the Drude bath as a total function (w = 0 maps to its limit).
/// With `high_temperature` the classical-C transform is used instead.
SpectralFunction drude_spectral_density(const bath::BathSpec& bath, const bath::ThermalState& temp,
                                        bool high_temperature = false);

/// beta hbar omega0 below which the high-temperature forms are trusted.
inline constexpr double kHighTemperatureLimit = 0.1;

bool high_temperature_valid(const SpinModel& spin, const bath::ThermalState& temp);

/// High-temperature rates at finite omega0 / alpha.
MarkovRates spin_boson_highT(const SpinModel& spin, const bath::BathSpec& bath,
                             const bath::ThermalState& temp);

/// Same in the limit omega0 / alpha -> 0: Gamma = 2 kappa / (beta hbar^2),
/// Omega^2 + Gamma^2 = omega0^2, z_inf = -beta hbar omega0 / 2.
MarkovRates spin_boson_limit_rates(double kappa, const SpinModel& spin,
                                   const bath::ThermalState& temp);

/// kappa_c = hbar^2 beta omega0 / 2.
double spin_boson_kappa_c(const SpinModel& spin, const bath::ThermalState& temp);

/// Overdamped-branch modes for kappa >= kappa_c; DomainError below (use
/// modes(spin_boson_limit_rates(...)) there).
ModeSet highT_modes(double kappa, const SpinModel& spin, const bath::ThermalState& temp);

/// Deep-overdamping asymptote of s3: -beta hbar^2 omega0^2 / (4 kappa).
double highT_slowest_asymptote(double kappa, const SpinModel& spin,
                               const bath::ThermalState& temp);

} // namespace overdamp::spin
