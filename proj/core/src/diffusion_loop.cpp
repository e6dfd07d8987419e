#include "overdamp/diffusion_loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "overdamp/eigen.hpp"
#include "overdamp/errors.hpp"
#include "overdamp/parallel.hpp"

namespace overdamp::loop {

using cplx = std::complex<double>;

LoopModel::LoopModel(int n_sites, double hop, double e0, double hbar)
    : n_sites_(n_sites), hop_(hop), e0_(e0), hbar_(hbar) {
  if (n_sites < 2) {
    throw DomainError("LoopModel: n_sites must be >= 2");
  }
  if (!(hop > 0.0) || !std::isfinite(hop)) {
    throw DomainError("LoopModel: hop must be finite and > 0");
  }
  if (!std::isfinite(e0)) {
    throw DomainError("LoopModel: e0 must be finite");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("LoopModel: hbar must be finite and > 0");
  }
}

Eigen::MatrixXd LoopModel::hamiltonian() const {
  const int n = n_sites_;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * e0_;
  for (int l = 0; l < n; ++l) {
    const int next = (l + 1) % n;
    h(l, next) -= hop_;
    h(next, l) -= hop_;
  }
  return h;
}

DephasingBath::DephasingBath(double q_strength) : q_(q_strength) {
  if (!(q_strength >= 0.0) || !std::isfinite(q_strength)) {
    throw DomainError("DephasingBath: q_strength must be finite and >= 0");
  }
}

Eigen::MatrixXcd build_full_generator(const LoopModel& model, const DephasingBath& bath) {
  const int n = model.n_sites();
  if (n > kFullGeneratorMaxSites) {
    std::ostringstream msg;
    msg << "build_full_generator: N = " << n << " exceeds the oracle limit "
        << kFullGeneratorMaxSites;
    throw DomainError(msg.str());
  }
  const Eigen::MatrixXd h = model.hamiltonian();
  const double hbar = model.hbar();
  const double dephase = 2.0 * bath.q_strength() / (hbar * hbar);
  const cplx mi_hbar(0.0, -1.0 / hbar);
  const int dim = n * n;
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
  // (H rho - rho H)_{ab} = sum_c H_ac rho_cb - sum_d rho_ad H_db
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int row = a * n + b;
      for (int c = 0; c < n; ++c) {
        if (h(a, c) != 0.0) gen(row, c * n + b) += mi_hbar * h(a, c);
        if (h(c, b) != 0.0) gen(row, a * n + c) -= mi_hbar * h(c, b);
      }
      if (a != b) gen(row, row) -= dephase;
    }
  }
  return gen;
}

double bloch_number(const LoopModel& model, int n) {
  return 2.0 * std::numbers::pi * n / model.n_sites();
}

Eigen::MatrixXcd build_sector(const LoopModel& model, const DephasingBath& bath, int n) {
  const int size = model.n_sites();
  if (n < 1 || n > size) {
    std::ostringstream msg;
    msg << "build_sector: sector index " << n << " outside 1.." << size;
    throw DomainError(msg.str());
  }
  const double q = bloch_number(model, n);
  const double hbar = model.hbar();
  const cplx i_a(0.0, model.hop() / hbar);
  const cplx to_next = i_a * (1.0 - std::polar(1.0, -q)); // couples f_r to f_{r+1}
  const cplx to_prev = i_a * (1.0 - std::polar(1.0, q));  // couples f_r to f_{r-1}
  const double dephase = 2.0 * bath.q_strength() / (hbar * hbar);

  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < size; ++r) {
    s(r, (r + 1) % size) += to_next;
    s(r, (r + size - 1) % size) += to_prev;
    if (r != 0) s(r, r) -= dephase;
  }
  return s;
}

SectorSpectrum sector_spectrum(const LoopModel& model, const DephasingBath& bath, int n) {
  SectorSpectrum out;
  out.n = n;
  out.bloch_q = bloch_number(model, n);
  const Eigen::VectorXcd ev = num::general_eig(build_sector(model, bath, n));
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });

  const double hbar = model.hbar();
  const double q = bath.q_strength();
  const double branch_point = 2.0 * hbar * model.hop() * std::abs(std::sin(0.5 * out.bloch_q));
  if (q > branch_point) {
    const double scale = 2.0 * q / (hbar * hbar) + 4.0 * model.hop() / hbar;
    const double real_tol = 1e-8 * scale;
    // the separated eigenvalue is the slowest one; it must come out real
    const cplx& slowest = out.eigenvalues.front();
    if (std::abs(slowest.imag()) <= real_tol) {
      out.diffusive = slowest.real();
    }
  }
  return out;
}

std::vector<SectorSpectrum> full_spectrum(const LoopModel& model, const DephasingBath& bath) {
  return parallel_map(static_cast<std::size_t>(model.n_sites()), [&](std::size_t i) {
    return sector_spectrum(model, bath, static_cast<int>(i) + 1);
  });
}

std::optional<double> diffusive_eigenvalue(const LoopModel& model, const DephasingBath& bath,
                                           double q) {
  const double hbar = model.hbar();
  const double strength = bath.q_strength();
  const double branch_point = 2.0 * hbar * model.hop() * std::abs(std::sin(0.5 * q));
  if (!(strength >= branch_point) || strength == 0.0) {
    return std::nullopt;
  }
  const double ratio = branch_point / strength;
  const double root = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  // 1 - sqrt(1 - x^2) = x^2 / (1 + sqrt(1 - x^2))
  return -2.0 * strength / (hbar * hbar) * (ratio * ratio) / (1.0 + root);
}

double q_critical(const LoopModel& model) {
  return 2.0 * model.hbar() * model.hop() * std::sin(std::numbers::pi / model.n_sites());
}

DephasingBath dephasing_from_drude(const bath::BathSpec& spec, const bath::ThermalState& temp) {
  spec.require_unit(bath::CouplingUnit::Action, "dephasing_from_drude");
  if (temp.is_zero_temperature()) {
    throw DomainError("dephasing_from_drude: the Q = kappa/beta mapping needs a finite temperature");
  }
  return DephasingBath(spec.kappa() / temp.beta());
}

std::optional<double> dispersion_highT(const LoopModel& model, const bath::BathSpec& spec,
                                       const bath::ThermalState& temp, double q) {
  return diffusive_eigenvalue(model, dephasing_from_drude(spec, temp), q);
}

double dispersion_highT_leading(const LoopModel& model, const bath::BathSpec& spec,
                                const bath::ThermalState& temp, double q) {
  const DephasingBath b = dephasing_from_drude(spec, temp);
  if (!(b.q_strength() > 0.0)) {
    throw DomainError("dispersion_highT_leading: kappa must be > 0");
  }
  const double a = model.hop();
  return -a * a * q * q / b.q_strength();
}

std::vector<std::vector<cplx>> track_branches(const LoopModel& model, int n,
                                              std::span<const double> q_strengths) {
  std::vector<std::vector<cplx>> rows;
  rows.reserve(q_strengths.size());
  for (double strength : q_strengths) {
    auto current = sector_spectrum(model, DephasingBath(strength), n).eigenvalues;
    if (rows.empty()) {
      rows.push_back(std::move(current));
      continue;
    }
    const auto& prev = rows.back();
    std::vector<cplx> matched(prev.size());
    std::vector<bool> used(current.size(), false);
    for (std::size_t j = 0; j < prev.size(); ++j) {
      std::size_t best = current.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < current.size(); ++c) {
        if (used[c]) continue;
        const double d = std::abs(current[c] - prev[j]);
        const bool tie = best < current.size() && std::abs(d - best_dist) <= 1e-12 * (1.0 + d);
        if (d < best_dist && !tie) {
          best = c;
          best_dist = d;
        } else if (tie && current[c].real() > current[best].real()) {
          best = c;
        }
      }
      used[best] = true;
      matched[j] = current[best];
    }
    rows.push_back(std::move(matched));
  }
  return rows;
}

} // namespace overdamp::loop
