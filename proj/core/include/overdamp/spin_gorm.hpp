#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include <Eigen/Dense>

#include "overdamp/damped_spin.hpp"

namespace overdamp::gorm {

/// Spin coupled to a random-matrix bath: H_B = X / sqrt(8N), B = eta X' / sqrt(8N)
/// with X, X' drawn from the GOE in dimension N/2.
class GormModel {
public:
  GormModel(int n_total, double eta, double omega0, double hbar = 1.0);

  int n_total() const { return n_total_; }
  int bath_dim() const { return n_total_ / 2; }
  double eta() const { return eta_; }
  double omega0() const { return omega0_; }
  double hbar() const { return hbar_; }

  GormModel with_eta(double eta) const { return GormModel(n_total_, eta, omega0_, hbar_); }
  spin::SpinModel spin() const { return spin::SpinModel(omega0_, hbar_); }

private:
  int n_total_;
  double eta_;
  double omega0_;
  double hbar_;
};

/// Bath eigenstates with energy in [eps - delta_eps/2, eps + delta_eps/2].
class MicrocanonicalWindow {
public:
  MicrocanonicalWindow(double eps, double delta_eps);

  double eps() const { return eps_; }
  double delta_eps() const { return delta_eps_; }
  double lo() const { return eps_ - 0.5 * delta_eps_; }
  double hi() const { return eps_ + 0.5 * delta_eps_; }

private:
  double eps_;
  double delta_eps_;
};

struct GoeSample {
  Eigen::MatrixXd hb;   ///< bath Hamiltonian, already scaled
  Eigen::MatrixXd bmat; ///< coupling agent, already scaled (includes eta)
  std::uint64_t seed = 0;
};

struct GormRates {
  double gamma = 0.0;
  double omega2 = 0.0;
  std::optional<double> z_inf; ///< empty outside the semicircle support (Gamma = 0)

  double omega2_plus_gamma2() const { return omega2 + gamma * gamma; }
  spin::MarkovRates markov() const { return {gamma, omega2, z_inf}; }
};

/// Two GOE draws from one Gaussian stream: upper triangle of X row by row
/// (diagonal included), then the same for X'.
GoeSample sample_goe(const GormModel& model, std::uint64_t seed);

/// Large-N microcanonical autocorrelator eta^2 J1(t/2hbar) / (4t/hbar) e^{i eps t/hbar}.
std::complex<double> gorm_correlator(const GormModel& model, double eps, double t);

/// Semicircle alpha~(eps, w) = (eta^2 hbar / 2pi) sqrt(1/4 - (eps + hbar w)^2), zero outside.
double semicircle_ft(const GormModel& model, double eps, double omega);

/// Frequency interval on which semicircle_ft is nonzero.
std::pair<double, double> semicircle_support(const GormModel& model, double eps);

/// Gamma(eps) = (eta^2 / 2hbar) [sqrt(1/4 - (eps - hbar w0)^2) + sqrt(1/4 - (eps + hbar w0)^2)],
/// each root dropped outside the support.
double gamma_closed_form(const GormModel& model, double eps);

/// Rates from the general Markovian formulas with the semicircle spectral
/// density; the frequency shift is a principal-value quadrature.
GormRates gorm_rates(const GormModel& model, double eps);

/// Omega^2 + Gamma^2 in closed form, from the Stieltjes transform of the semicircle:
/// w0^2 + 2 eta^2 w0^2 - (eta^2 w0 / hbar) [r(eps + hbar w0) - r(eps - hbar w0)],
/// r(x) = sgn(x) sqrt(x^2 - 1/4) for |x| > 1/2 and 0 inside.
double omega2_plus_gamma2_closed_form(const GormModel& model, double eps);

/// The arctan expression for Omega^2 + Gamma^2 in the form it is usually quoted;
/// only defined where both |eps +- hbar w0| > 1/2. Differs from the quadrature
/// by a factor 1/2 on the shift (kept for comparison).
std::optional<double> omega2_plus_gamma2_arctan_form(const GormModel& model, double eps);

/// Coupling eta_c at which Omega^2 = 0. With Gamma = G eta^2 and shift = S eta^2
/// this solves G^2 u^2 - S u - w0^2 = 0 for u = eta^2. Empty when no positive
/// root exists or it exceeds eta_max.
std::optional<double> eta_critical(double omega0, double hbar, double eps, double eta_max = 1.0);

/// H = (hbar w0 / 2) sigma_z (x) 1 + 1 (x) hb + sigma_x (x) bmat; spin index is the
/// slow one (basis index s * N/2 + j).
Eigen::MatrixXd build_full_hamiltonian(const GormModel& model, const GoeSample& sample);

/// Shell-averaged exact reduced dynamics starting from spin0 (x) |E_j>, for
/// every bath eigenstate E_j in the window.
spin::Trajectory exact_evolve(const GormModel& model, const GoeSample& sample,
                              const MicrocanonicalWindow& window, const spin::BlochVector& spin0,
                              std::span<const double> times);

/// Number of bath eigenstates in the window.
int shell_size(const GoeSample& sample, const MicrocanonicalWindow& window);

/// Markovian Redfield trajectory for the same model.
spin::Trajectory redfield_evolve(const GormModel& model, double eps, const spin::BlochVector& spin0,
                                 std::span<const double> times);

struct DeviationReport {
  std::array<double, 3> sup{}; ///< max |a - b| for x, y, z
  std::array<double, 3> rms{};
};

DeviationReport compare_exact_redfield(const spin::Trajectory& exact,
                                       const spin::Trajectory& redfield);

} // namespace overdamp::gorm
