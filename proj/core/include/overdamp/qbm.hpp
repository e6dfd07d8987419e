#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "overdamp/bath.hpp"
#include "overdamp/damped_spin.hpp"

namespace overdamp::qbm {

using spin::Regime;

/// Central oscillator of frequency omega0 coupled to a Drude bath whose
/// coupling kappa carries frequency units.
class QbmModel {
public:
  QbmModel(double omega0, const bath::BathSpec& bath, const bath::ThermalState& temp);

  double omega0() const { return omega0_; }
  double kappa() const { return bath_.kappa(); }
  double alpha() const { return bath_.alpha(); }
  double hbar() const { return bath_.hbar(); }
  double beta() const { return temp_.beta(); }
  const bath::BathSpec& bath() const { return bath_; }
  const bath::ThermalState& temperature() const { return temp_; }

  QbmModel with_kappa(double kappa) const;

private:
  double omega0_;
  bath::BathSpec bath_;
  bath::ThermalState temp_;
};

/// Convenience constructor; hbar = 1 and beta = +inf unless given.
QbmModel make_model(double omega0, double kappa, double alpha, double beta = bath::kInfiniteBeta,
                    double hbar = 1.0);

/// Relaxation rates: the modes are -lambda and -Gamma +- i Omega.
struct QbmRates {
  double gamma = 0.0;
  double omega2 = 0.0; ///< Omega^2, negative when overdamped
  double lambda = 0.0;
  Regime regime = Regime::Normal;
  /// lambda could not be told apart from the pair (near the triple root);
  /// lambda_interval then brackets the candidates.
  bool ambiguous = false;
  std::array<double, 2> lambda_interval{};
  double residual = 0.0; ///< max relative residual of the characteristic equations
};

/// Exact rates from s^3 + alpha s^2 + (omega0^2 + alpha kappa) s + alpha omega0^2 = 0.
/// With three real roots, lambda follows the root that starts at -alpha for kappa = 0.
QbmRates exact_rates(const QbmModel& model);

/// Gamma = kappa/2, Omega^2 = omega0^2 - kappa^2/4, lambda = alpha.
QbmRates markov_rates(const QbmModel& model);

/// min(alpha, lambda) / max |-Gamma +- i Omega|; large means Markovian.
double markov_ratio(const QbmModel& model, const QbmRates& rates);

/// Max relative residual of lambda = alpha - 2 Gamma,
/// omega0^2 + alpha kappa = Omega^2 + Gamma^2 + 2 lambda Gamma,
/// omega0^2 = (Omega^2 + Gamma^2) lambda / alpha.
double characteristic_residual(const QbmModel& model, const QbmRates& rates);

struct PerturbativeRates {
  double gamma_p = 0.0;
  double omega2_p = 0.0;
  double p2_eq = 0.0;             ///< (hbar w0 / 2) coth(beta hbar w0 / 2)
  double mixed_coefficient = 0.0; ///< (Omega_p^2 + Gamma_p^2) <Q^2> - <P^2>, high-T form
};

PerturbativeRates perturbative_rates(const QbmModel& model);

enum class AmplitudeForm { Full, Markov };

struct AmplitudeValue {
  double a = 0.0;
  double adot = 0.0;
  bool degenerate = false; ///< triple-root limit used
};

/// A(t) with A(0) = 0, dA/dt(0) = 1. Full: three-rate form; Markov: e^{-Gamma t} sin(Omega t)/Omega.
AmplitudeValue amplitude(const QbmRates& rates, double t, AmplitudeForm form = AmplitudeForm::Full);

struct OscillatorMeanState {
  double q_mean = 0.0;
  double p_mean = 0.0;
};

/// <Q(t)> = dA/dt <Q(0)> + A <P(0)>.
double mean_displacement(const QbmRates& rates, const OscillatorMeanState& init, double t,
                         AmplitudeForm form = AmplitudeForm::Full);

/// kappa_c = 2 omega0.
double kappa_critical(const QbmModel& model);

/// Coupling at which the exact complex pair reaches the real axis (cubic
/// discriminant zero). Empty if no sign change up to kappa_max_factor * omega0.
std::optional<double> kappa_critical_exact(double omega0, double alpha,
                                           double kappa_max_factor = 1e3);

/// Slowest Markovian rate -kappa/2 + (kappa/2) sqrt(1 - (kappa_c/kappa)^2) for kappa >= kappa_c;
/// below kappa_c the common real part -kappa/2 of the pair.
double slowest_rate_markov(const QbmModel& model);

enum class BathGrid { Uniform, Geometric };

struct DiscretizedBath {
  std::vector<double> frequencies;
  std::vector<double> couplings; ///< eps_n with eps_n^2 = gamma(w_n) dw_n
  std::vector<double> widths;    ///< dw_n
  BathGrid grid = BathGrid::Uniform;
};

/// Lowest edge of the geometric grid, as a fraction of omega_max.
inline constexpr double kGeometricGridSpan = 1e-6;

/// Midpoint discretisation of gamma(w) on (0, omega_max]: uniform cells, or
/// cells with a fixed ratio between omega_max * kGeometricGridSpan and omega_max.
DiscretizedBath discretize_bath(const QbmModel& model, int n_osc, double omega_max,
                                BathGrid grid = BathGrid::Uniform);

/// 2 pi / (local mode spacing at omega0).
double recurrence_time(const DiscretizedBath& bath, double omega0);

struct OracleResult {
  std::vector<double> q_mean;
  std::vector<double> p_mean;
  double energy_drift = 0.0; ///< max relative change of the total energy
  double recurrence_time = 0.0;
  long steps = 0;
};

/// Means of the finite oscillator bath integrated with RK4 from the product
/// initial state (bath means zero). Refuses times beyond half the recurrence time.
OracleResult finite_bath_oracle(const QbmModel& model, int n_osc, double omega_max,
                                const OscillatorMeanState& init, std::span<const double> times,
                                BathGrid grid = BathGrid::Uniform);

struct UllersmaBound {
  double kappa_max = 0.0;                ///< omega0^2 / alpha
  double renormalized_omega0_sq = 0.0;   ///< omega0^2 + kappa alpha
};

UllersmaBound ullersma_bound(const QbmModel& model);

/// Frequency maps between the Ullersma Hamiltonian and the QBM Hamiltonian.
double ullersma_to_qbm_omega0_sq(double omega0_sq, double kappa, double alpha);
double qbm_to_ullersma_omega0_sq(double omega0_sq, double kappa, double alpha);

/// Positive root of kappa alpha + kappa^2/4 = omega0^2.
double ullersma_kappa_critical(double omega0, double alpha);

/// g(z) = z^2 - omega0^2 - int gamma/w^2 - int gamma/(z^2 - w^2), by quadrature.
/// For Re s > 0, g(i s) = -P(s) / (s + alpha) with P the characteristic cubic; the
/// roots of P are zeros of its continuation to Re s < 0, which the integral does
/// not reach (it depends on z^2 only).
std::complex<double> g_function(const QbmModel& model, std::complex<double> z);

} // namespace overdamp::qbm
