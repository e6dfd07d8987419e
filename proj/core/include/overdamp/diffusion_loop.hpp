#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "overdamp/bath.hpp"

namespace overdamp::loop {

/// Tight-binding ring: on-site energy E0, hopping -A between neighbours.
class LoopModel {
public:
  LoopModel(int n_sites, double hop, double e0 = 0.0, double hbar = 1.0);

  int n_sites() const { return n_sites_; }
  double hop() const { return hop_; }
  double e0() const { return e0_; }
  double hbar() const { return hbar_; }

  Eigen::MatrixXd hamiltonian() const;

private:
  int n_sites_;
  double hop_;
  double e0_;
  double hbar_;
};

/// Local white-noise bath, alpha_ll'(tau) = 2 Q delta(tau) delta_ll'.
class DephasingBath {
public:
  explicit DephasingBath(double q_strength);
  double q_strength() const { return q_; }

private:
  double q_;
};

struct SectorSpectrum {
  int n = 0;
  double bloch_q = 0.0;
  std::vector<std::complex<double>> eigenvalues; ///< sorted by descending real part
  std::optional<double> diffusive;
};

/// Largest ring for which the full N^2 x N^2 generator is built.
inline constexpr int kFullGeneratorMaxSites = 12;

/// Full Redfield generator, d rho/dt = -(i/hbar)[H, rho] - (2Q/hbar^2)(1 - delta_ll') rho_ll',
/// acting on rho flattened as index l * N + l'.
Eigen::MatrixXcd build_full_generator(const LoopModel& model, const DephasingBath& bath);

double bloch_number(const LoopModel& model, int n);

/// Block for Bloch number q = 2 pi n / N acting on f_r, where
/// rho_{b+r, b} = e^{iqb} f_r (indices mod N).
Eigen::MatrixXcd build_sector(const LoopModel& model, const DephasingBath& bath, int n);

SectorSpectrum sector_spectrum(const LoopModel& model, const DephasingBath& bath, int n);

/// Spectra of all N sectors, n = 1..N, in order.
std::vector<SectorSpectrum> full_spectrum(const LoopModel& model, const DephasingBath& bath);

/// s = -(2Q/hbar^2)(1 - sqrt(1 - (2 hbar A sin(q/2) / Q)^2)); empty below the branch point.
std::optional<double> diffusive_eigenvalue(const LoopModel& model, const DephasingBath& bath,
                                           double q);

/// Q_c = 2 hbar A sin(pi / N).
double q_critical(const LoopModel& model);

/// High-temperature Drude bath mapped onto Q = kappa / beta (kappa in action units).
DephasingBath dephasing_from_drude(const bath::BathSpec& spec, const bath::ThermalState& temp);

std::optional<double> dispersion_highT(const LoopModel& model, const bath::BathSpec& spec,
                                       const bath::ThermalState& temp, double q);

/// Small-q form -(beta A^2 / kappa) q^2.
double dispersion_highT_leading(const LoopModel& model, const bath::BathSpec& spec,
                                const bath::ThermalState& temp, double q);

/// Sector eigenvalues followed across a sweep of Q. Row k holds the spectrum at
/// q_strengths[k], permuted so that column j continues the branch of column j in
/// row k - 1 (nearest neighbour in the complex plane, ties to larger real part).
std::vector<std::vector<std::complex<double>>> track_branches(const LoopModel& model, int n,
                                                              std::span<const double> q_strengths);

} // namespace overdamp::loop
