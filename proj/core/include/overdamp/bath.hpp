#pragma once

#include <limits>

namespace overdamp::bath {

/// Physical dimension carried by the coupling strength kappa. The spin-boson
/// rates need an action, quantum Brownian motion a frequency.
enum class CouplingUnit { Action, Frequency };

/// Drude (Ullersma) oscillator bath: gamma(w) = (2/pi) kappa alpha^2 w^2 / (alpha^2 + w^2).
class BathSpec {
public:
  BathSpec(double kappa, double alpha, CouplingUnit unit, double hbar = 1.0);

  double kappa() const { return kappa_; }
  double alpha() const { return alpha_; }
  double hbar() const { return hbar_; }
  CouplingUnit unit() const { return unit_; }

  /// DomainError unless the coupling carries `expected` units.
  void require_unit(CouplingUnit expected, const char* context) const;

private:
  double kappa_;
  double alpha_;
  CouplingUnit unit_;
  double hbar_;
};

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// Inverse temperature; beta = +inf is zero temperature.
class ThermalState {
public:
  explicit ThermalState(double beta);
  static ThermalState zero_temperature() {
    return ThermalState(kInfiniteBeta);
  }

  double beta() const { return beta_; }
  bool is_zero_temperature() const { return beta_ == kInfiniteBeta; }

private:
  double beta_;
};

/// alpha(t) = C(t) + i D(t)
struct CorrelatorValue {
  double c = 0.0;
  double d = 0.0;
};

double spectral_gamma(const BathSpec& spec, double omega);

/// J(w) = gamma(w) / (2 w), w > 0.
double spectral_j(const BathSpec& spec, double omega);

/// Equilibrium autocorrelator of the coupling agent by quadrature over the
/// oscillator spectrum. C diverges logarithmically at t = 0 for this bath, so
/// t = 0 is a DomainError; NumericalError when the quadrature fails.
CorrelatorValue correlator(const BathSpec& spec, const ThermalState& temp, double t);

/// Closed forms valid when beta hbar alpha << 1:
/// C = (kappa alpha / beta) e^{-alpha|t|}, D = -(hbar kappa alpha^2 / 2) e^{-alpha|t|} sgn t.
CorrelatorValue correlator_high_temperature(const BathSpec& spec, const ThermalState& temp,
                                            double t);

/// Fourier transform alpha~(w) = gamma(|w|) hbar / (4 w) (coth(beta hbar w / 2) + 1), w != 0.
/// Evaluated in an overflow-free form; exact detailed balance
/// alpha~(-w) = e^{-beta hbar w} alpha~(w).
double correlator_ft(const BathSpec& spec, const ThermalState& temp, double omega);

/// The w -> 0 limit of correlator_ft: kappa / (pi beta), zero at zero temperature.
double correlator_ft_zero_limit(const BathSpec& spec, const ThermalState& temp);

/// Fourier transform of the high-temperature correlator (classical C, exact D):
/// kappa alpha^2 / (pi beta (alpha^2 + w^2)) + gamma(|w|) hbar / (4 w).
double correlator_ft_high_temperature(const BathSpec& spec, const ThermalState& temp,
                                      double omega);

/// E_beta(w) = (hbar w / 2) coth(beta hbar w / 2); w -> 0 gives 1/beta.
double thermal_energy(const ThermalState& temp, double omega, double hbar = 1.0);

} // namespace overdamp::bath
