#include "overdamp/spin_gorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "overdamp/eigen.hpp"
#include "overdamp/errors.hpp"
#include "overdamp/quadrature.hpp"
#include "overdamp/random.hpp"
#include "overdamp/special.hpp"

namespace overdamp::gorm {

GormModel::GormModel(int n_total, double eta, double omega0, double hbar)
    : n_total_(n_total), eta_(eta), omega0_(omega0), hbar_(hbar) {
  if (n_total < 4 || n_total % 2 != 0) {
    throw DomainError("GormModel: n_total must be even and >= 4");
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw DomainError("GormModel: eta must be finite and >= 0");
  }
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw DomainError("GormModel: omega0 must be finite and > 0");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("GormModel: hbar must be finite and > 0");
  }
}

MicrocanonicalWindow::MicrocanonicalWindow(double eps, double delta_eps)
    : eps_(eps), delta_eps_(delta_eps) {
  if (!std::isfinite(eps)) {
    throw DomainError("MicrocanonicalWindow: eps must be finite");
  }
  if (!(delta_eps > 0.0) || !std::isfinite(delta_eps)) {
    throw DomainError("MicrocanonicalWindow: delta_eps must be finite and > 0");
  }
}

namespace {

void fill_goe(Eigen::MatrixXd& m, num::GaussianStream& stream, double scale) {
  const Eigen::Index n = m.rows();
  const double diag_scale = std::numbers::sqrt2 * scale;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double g = stream.next();
      if (i == j) {
        m(i, i) = diag_scale * g;
      } else {
        m(i, j) = scale * g;
        m(j, i) = m(i, j);
      }
    }
  }
}

// sqrt(1/4 - x^2), zero outside [-1/2, 1/2]
double semicircle_root(double x) {
  const double r = 0.25 - x * x;
  return r > 0.0 ? std::sqrt(r) : 0.0;
}

// sgn(x) sqrt(x^2 - 1/4) outside the support, 0 inside
double stieltjes_tail(double x) {
  const double r = x * x - 0.25;
  return r > 0.0 ? std::copysign(std::sqrt(r), x) : 0.0;
}

} // namespace

GoeSample sample_goe(const GormModel& model, std::uint64_t seed) {
  const int m = model.bath_dim();
  const double scale = 1.0 / std::sqrt(8.0 * model.n_total());
  num::GaussianStream stream(seed);
  GoeSample out;
  out.seed = seed;
  out.hb.resize(m, m);
  out.bmat.resize(m, m);
  fill_goe(out.hb, stream, scale);
  fill_goe(out.bmat, stream, model.eta() * scale);
  return out;
}

std::complex<double> gorm_correlator(const GormModel& model, double eps, double t) {
  const double hbar = model.hbar();
  const double eta2 = model.eta() * model.eta();
  const double u = t / (2.0 * hbar);
  // J1(u) / (8u) -> 1/16 as u -> 0
  const double envelope =
      std::abs(u) < 1e-8 ? eta2 / 16.0 : eta2 * num::bessel_j1(u) / (8.0 * u);
  const double phase = eps * t / hbar;
  return {envelope * std::cos(phase), envelope * std::sin(phase)};
}

double semicircle_ft(const GormModel& model, double eps, double omega) {
  const double eta2 = model.eta() * model.eta();
  return eta2 * model.hbar() / (2.0 * std::numbers::pi) *
         semicircle_root(eps + model.hbar() * omega);
}

std::pair<double, double> semicircle_support(const GormModel& model, double eps) {
  return {(-0.5 - eps) / model.hbar(), (0.5 - eps) / model.hbar()};
}

double gamma_closed_form(const GormModel& model, double eps) {
  const double hw = model.hbar() * model.omega0();
  const double eta2 = model.eta() * model.eta();
  return eta2 / (2.0 * model.hbar()) * (semicircle_root(eps - hw) + semicircle_root(eps + hw));
}

GormRates gorm_rates(const GormModel& model, double eps) {
  const double w0 = model.omega0();
  const double hbar = model.hbar();
  GormRates r;
  r.gamma = gamma_closed_form(model, eps);

  const auto [lo, hi] = semicircle_support(model, eps);
  auto integrand = [&](double w) {
    const double density = semicircle_ft(model, eps, w);
    return density == 0.0 ? 0.0 : density / ((w0 - w) * (w0 + w));
  };
  // a pole on the support edge meets a square-root zero and is integrable
  const double margin = 1e-9 * (hi - lo);
  std::vector<double> poles;
  for (double p : {-w0, w0}) {
    if (p > lo + margin && p < hi - margin) poles.push_back(p);
  }
  const double pv = model.eta() == 0.0 ? 0.0 : num::pv_integral(integrand, poles, lo, hi);
  r.omega2 = w0 * w0 + 4.0 * w0 * w0 / (hbar * hbar) * pv - r.gamma * r.gamma;

  const double up = semicircle_ft(model, eps, w0);
  const double down = semicircle_ft(model, eps, -w0);
  if (up + down > 0.0) {
    r.z_inf = (down - up) / (down + up);
  }
  return r;
}

double omega2_plus_gamma2_closed_form(const GormModel& model, double eps) {
  const double w0 = model.omega0();
  const double hw = model.hbar() * w0;
  const double eta2 = model.eta() * model.eta();
  return w0 * w0 + 2.0 * eta2 * w0 * w0 -
         eta2 * w0 / model.hbar() * (stieltjes_tail(eps + hw) - stieltjes_tail(eps - hw));
}

std::optional<double> omega2_plus_gamma2_arctan_form(const GormModel& model, double eps) {
  const double w0 = model.omega0();
  const double hw = model.hbar() * w0;
  const double eta2 = model.eta() * model.eta();
  const double a = eps + hw;
  const double b = eps - hw;
  if (!(a * a > 0.25 && b * b > 0.25)) {
    return std::nullopt;
  }
  auto term = [](double x) {
    const double s = std::sqrt(x * x - 0.25);
    return s / std::numbers::pi * (std::atan((x + 0.5) / s) + std::atan((x - 0.5) / s));
  };
  const double c = eta2 / model.hbar() * w0;
  return w0 * w0 + eta2 * w0 * w0 - c * term(a) + c * term(b);
}

std::optional<double> eta_critical(double omega0, double hbar, double eps, double eta_max) {
  const GormModel unit(4, 1.0, omega0, hbar);
  const GormRates r = gorm_rates(unit, eps);
  const double g = r.gamma;
  const double s = r.omega2_plus_gamma2() - omega0 * omega0;
  if (!(g > 0.0)) {
    return std::nullopt;
  }
  const double w2 = omega0 * omega0;
  // positive root of g^2 u^2 - s u - w0^2, written to avoid cancellation for s < 0
  const double disc = std::sqrt(s * s + 4.0 * g * g * w2);
  const double u = s >= 0.0 ? (s + disc) / (2.0 * g * g) : 2.0 * w2 / (disc - s);
  const double eta = std::sqrt(u);
  if (!(eta <= eta_max)) {
    return std::nullopt;
  }
  return eta;
}

Eigen::MatrixXd build_full_hamiltonian(const GormModel& model, const GoeSample& sample) {
  const int m = model.bath_dim();
  if (sample.hb.rows() != m || sample.hb.cols() != m || sample.bmat.rows() != m ||
      sample.bmat.cols() != m) {
    std::ostringstream msg;
    msg << "build_full_hamiltonian: sample matrices must be " << m << "x" << m << ", got "
        << sample.hb.rows() << "x" << sample.hb.cols() << " and " << sample.bmat.rows() << "x"
        << sample.bmat.cols();
    throw DomainError(msg.str());
  }
  const double half = 0.5 * model.hbar() * model.omega0();
  Eigen::MatrixXd h(2 * m, 2 * m);
  h.topLeftCorner(m, m) = sample.hb;
  h.bottomRightCorner(m, m) = sample.hb;
  h.topLeftCorner(m, m).diagonal().array() += half;
  h.bottomRightCorner(m, m).diagonal().array() -= half;
  h.topRightCorner(m, m) = sample.bmat;
  h.bottomLeftCorner(m, m) = sample.bmat;
  return h;
}

namespace {

std::vector<Eigen::Index> shell_indices(const Eigen::VectorXd& energies,
                                        const MicrocanonicalWindow& window) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < energies.size(); ++i) {
    if (energies[i] >= window.lo() && energies[i] <= window.hi()) idx.push_back(i);
  }
  if (idx.empty()) {
    Eigen::Index nearest = 0;
    (energies.array() - window.eps()).abs().minCoeff(&nearest);
    std::ostringstream msg;
    msg << "microcanonical window [" << window.lo() << ", " << window.hi()
        << "] contains no bath eigenvalue; nearest is " << energies[nearest];
    throw DomainError(msg.str());
  }
  return idx;
}

} // namespace

int shell_size(const GoeSample& sample, const MicrocanonicalWindow& window) {
  const auto bath = num::symmetric_eig(sample.hb, false);
  int count = 0;
  for (Eigen::Index i = 0; i < bath.values.size(); ++i) {
    if (bath.values[i] >= window.lo() && bath.values[i] <= window.hi()) ++count;
  }
  return count;
}

spin::Trajectory exact_evolve(const GormModel& model, const GoeSample& sample,
                              const MicrocanonicalWindow& window, const spin::BlochVector& spin0,
                              std::span<const double> times) {
  if (std::abs(spin0.norm() - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "exact_evolve: initial Bloch vector must be pure (|b| = 1), got |b| = " << spin0.norm();
    throw DomainError(msg.str());
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw DomainError("exact_evolve: time grid must be nonnegative and ascending");
    }
  }
  const Eigen::MatrixXd h = build_full_hamiltonian(model, sample);
  const Eigen::Index m = model.bath_dim();
  const Eigen::Index n = model.n_total();

  const auto bath = num::symmetric_eig(sample.hb);
  const auto shell = shell_indices(bath.values, window);
  const auto k = static_cast<Eigen::Index>(shell.size());

  const auto full = num::symmetric_eig(h);
  const Eigen::MatrixXd& v = full.vectors;
  const Eigen::VectorXd freq = full.values / model.hbar();

  // spinor (cos(theta/2), e^{i phi} sin(theta/2))
  const double theta = std::acos(std::clamp(spin0.z, -1.0, 1.0));
  const double phi = std::atan2(spin0.y, spin0.x);
  const double up = std::cos(0.5 * theta);
  const double down = std::sin(0.5 * theta);

  Eigen::MatrixXd psi_re = Eigen::MatrixXd::Zero(n, k);
  Eigen::MatrixXd psi_im = Eigen::MatrixXd::Zero(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const auto state = bath.vectors.col(shell[c]);
    psi_re.col(c).head(m) = up * state;
    psi_re.col(c).tail(m) = down * std::cos(phi) * state;
    psi_im.col(c).tail(m) = down * std::sin(phi) * state;
  }
  const Eigen::MatrixXd c_re = v.transpose() * psi_re;
  const Eigen::MatrixXd c_im = v.transpose() * psi_im;

  spin::Trajectory out;
  out.t.assign(times.begin(), times.end());
  out.b.resize(times.size());
  Eigen::MatrixXd w_re(n, k), w_im(n, k);
  std::vector<double> xs(k), ys(k), zs(k);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t == 0.0) {
      out.b[i] = spin0;
      continue;
    }
    for (Eigen::Index row = 0; row < n; ++row) {
      const double cs = std::cos(freq[row] * t);
      const double sn = std::sin(freq[row] * t);
      w_re.row(row) = cs * c_re.row(row) + sn * c_im.row(row);
      w_im.row(row) = cs * c_im.row(row) - sn * c_re.row(row);
    }
    psi_re.noalias() = v * w_re;
    psi_im.noalias() = v * w_im;
    for (Eigen::Index c = 0; c < k; ++c) {
      const auto ur = psi_re.col(c).head(m);
      const auto ui = psi_im.col(c).head(m);
      const auto dr = psi_re.col(c).tail(m);
      const auto di = psi_im.col(c).tail(m);
      xs[c] = 2.0 * (ur.dot(dr) + ui.dot(di));
      ys[c] = 2.0 * (ur.dot(di) - ui.dot(dr));
      zs[c] = ur.squaredNorm() + ui.squaredNorm() - dr.squaredNorm() - di.squaredNorm();
    }
    const double inv = 1.0 / static_cast<double>(k);
    out.b[i] = {num::pairwise_sum(xs) * inv, num::pairwise_sum(ys) * inv,
                num::pairwise_sum(zs) * inv};
  }
  return out;
}

spin::Trajectory redfield_evolve(const GormModel& model, double eps, const spin::BlochVector& spin0,
                                 std::span<const double> times) {
  const auto rates = gorm_rates(model, eps).markov();
  spin::Trajectory out;
  out.t.assign(times.begin(), times.end());
  out.b = spin::evolve(rates, model.spin(), spin0, times);
  return out;
}

DeviationReport compare_exact_redfield(const spin::Trajectory& exact,
                                       const spin::Trajectory& redfield) {
  if (exact.t.size() != redfield.t.size() || exact.b.size() != exact.t.size() ||
      redfield.b.size() != redfield.t.size()) {
    throw DomainError("compare_exact_redfield: trajectories have different lengths");
  }
  for (std::size_t i = 0; i < exact.t.size(); ++i) {
    const double scale = std::max(1.0, std::abs(exact.t[i]));
    if (std::abs(exact.t[i] - redfield.t[i]) > 1e-12 * scale) {
      std::ostringstream msg;
      msg << "compare_exact_redfield: time grids differ at index " << i << " (" << exact.t[i]
          << " vs " << redfield.t[i] << ")";
      throw DomainError(msg.str());
    }
  }
  DeviationReport rep;
  const std::size_t n = exact.t.size();
  if (n == 0) return rep;
  std::array<std::vector<double>, 3> sq;
  for (auto& v : sq) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::array<double, 3> d = {exact.b[i].x - redfield.b[i].x,
                                     exact.b[i].y - redfield.b[i].y,
                                     exact.b[i].z - redfield.b[i].z};
    for (int c = 0; c < 3; ++c) {
      rep.sup[c] = std::max(rep.sup[c], std::abs(d[c]));
      sq[c][i] = d[c] * d[c];
    }
  }
  for (int c = 0; c < 3; ++c) {
    rep.rms[c] = std::sqrt(num::pairwise_sum(sq[c]) / static_cast<double>(n));
  }
  return rep;
}

} // namespace overdamp::gorm
