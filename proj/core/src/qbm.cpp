#include "overdamp/qbm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "overdamp/errors.hpp"
#include "overdamp/ode.hpp"
#include "overdamp/quadrature.hpp"
#include "overdamp/roots.hpp"
#include "overdamp/tolerances.hpp"

namespace overdamp::qbm {

QbmModel::QbmModel(double omega0, const bath::BathSpec& bath, const bath::ThermalState& temp)
    : omega0_(omega0), bath_(bath), temp_(temp) {
  bath.require_unit(bath::CouplingUnit::Frequency, "QbmModel");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw DomainError("QbmModel: omega0 must be finite and > 0");
  }
}

QbmModel QbmModel::with_kappa(double kappa) const {
  return QbmModel(omega0_,
                  bath::BathSpec(kappa, bath_.alpha(), bath::CouplingUnit::Frequency, bath_.hbar()),
                  temp_);
}

QbmModel make_model(double omega0, double kappa, double alpha, double beta, double hbar) {
  return QbmModel(omega0, bath::BathSpec(kappa, alpha, bath::CouplingUnit::Frequency, hbar),
                  bath::ThermalState(beta));
}

namespace {

std::vector<double> real_roots(double omega0, double alpha, double kappa) {
  const auto c = num::cubic_roots(alpha, omega0 * omega0 + alpha * kappa, alpha * omega0 * omega0);
  std::vector<double> out;
  if (c.real_count == 1) {
    out.push_back(c.roots[0].real());
  } else {
    for (const auto& r : c.roots) out.push_back(r.real());
  }
  return out;
}

struct Tracker {
  double omega0;
  double alpha;
  bool ambiguous = false;

  // Follow the lambda root from (k_from, root_from) to k_to.
  double follow(double k_from, double root_from, double k_to, int depth) {
    const auto roots = real_roots(omega0, alpha, k_to);
    if (roots.size() == 1) return roots[0];
    std::vector<double> dist(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) dist[i] = std::abs(roots[i] - root_from);
    std::vector<std::size_t> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return dist[a] < dist[b]; });
    const double nearest = dist[order[0]];
    const double runner_up = dist[order[1]];
    const double floor = 1e-14 * (std::abs(root_from) + alpha);
    if (runner_up > 4.0 * nearest + floor) return roots[order[0]];
    if (depth >= 48) {
      ambiguous = true;
      return roots[order[0]];
    }
    const double mid = 0.5 * (k_from + k_to);
    const double root_mid = follow(k_from, root_from, mid, depth + 1);
    return follow(mid, root_mid, k_to, depth + 1);
  }
};

double relative(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

Regime classify_rates(double omega0, double gamma, double omega2) {
  const double scale = std::max(omega0 * omega0, gamma * gamma);
  if (omega2 > tol::kCriticalBand * scale) return Regime::Normal;
  if (omega2 < -tol::kCriticalBand * scale) return Regime::Overdamped;
  return Regime::Critical;
}

} // namespace

double characteristic_residual(const QbmModel& model, const QbmRates& r) {
  const double w2 = model.omega0() * model.omega0();
  const double a = model.alpha();
  const double k = model.kappa();
  const double w2g2 = r.omega2 + r.gamma * r.gamma;
  return std::max({relative(r.lambda, a - 2.0 * r.gamma),
                   relative(w2 + a * k, w2g2 + 2.0 * r.lambda * r.gamma),
                   relative(w2, w2g2 * r.lambda / a)});
}

QbmRates exact_rates(const QbmModel& model) {
  const double w0 = model.omega0();
  const double a = model.alpha();
  const double k = model.kappa();
  const auto cubic = num::cubic_roots(a, w0 * w0 + a * k, a * w0 * w0);

  QbmRates r;
  if (cubic.real_count == 1) {
    r.lambda = -cubic.roots[0].real();
    r.gamma = -cubic.roots[1].real();
    r.omega2 = cubic.roots[1].imag() * cubic.roots[1].imag();
  } else {
    Tracker tracker{w0, a};
    constexpr int kSteps = 16;
    double root = -a;
    for (int i = 1; i <= kSteps; ++i) {
      const double k_from = k * (i - 1) / kSteps;
      const double k_to = k * i / kSteps;
      root = tracker.follow(k_from, root, k_to, 0);
    }
    std::array<double, 3> reals = {cubic.roots[0].real(), cubic.roots[1].real(),
                                   cubic.roots[2].real()};
    const auto it = std::min_element(reals.begin(), reals.end(), [&](double x, double y) {
      return std::abs(x - root) < std::abs(y - root);
    });
    const auto idx = static_cast<std::size_t>(it - reals.begin());
    double pair[2];
    for (std::size_t i = 0, j = 0; i < 3; ++i) {
      if (i != idx) pair[j++] = reals[i];
    }
    r.lambda = -reals[idx];
    r.gamma = -0.5 * (pair[0] + pair[1]);
    const double half_gap = 0.5 * (pair[0] - pair[1]);
    r.omega2 = -half_gap * half_gap;
    if (tracker.ambiguous || cubic.multiple_root) {
      r.ambiguous = tracker.ambiguous;
      r.lambda_interval = {-reals[2], -reals[0]};
    }
  }
  if (!r.ambiguous) r.lambda_interval = {r.lambda, r.lambda};
  r.regime = r.ambiguous ? Regime::Critical : classify_rates(w0, r.gamma, r.omega2);
  r.residual = characteristic_residual(model, r);
  return r;
}

QbmRates markov_rates(const QbmModel& model) {
  QbmRates r;
  const double k = model.kappa();
  const double w0 = model.omega0();
  r.gamma = 0.5 * k;
  r.omega2 = w0 * w0 - 0.25 * k * k;
  r.lambda = model.alpha();
  r.lambda_interval = {r.lambda, r.lambda};
  r.regime = classify_rates(w0, r.gamma, r.omega2);
  r.residual = characteristic_residual(model, r);
  return r;
}

double markov_ratio(const QbmModel& model, const QbmRates& rates) {
  const double fastest = rates.omega2 >= 0.0
                             ? std::sqrt(rates.gamma * rates.gamma + rates.omega2)
                             : rates.gamma + std::sqrt(-rates.omega2);
  const double slow_bath = std::min(model.alpha(), rates.lambda);
  return fastest > 0.0 ? slow_bath / fastest : std::numeric_limits<double>::infinity();
}

PerturbativeRates perturbative_rates(const QbmModel& model) {
  const double w0 = model.omega0();
  const double k = model.kappa();
  const double a = model.alpha();
  const double a2 = a * a;
  const double denom = a2 + w0 * w0;
  PerturbativeRates p;
  p.gamma_p = k * a2 / (2.0 * denom);
  const double w2g2 = w0 * w0 + k * a - k * a * a2 / denom;
  p.omega2_p = w2g2 - p.gamma_p * p.gamma_p;
  p.p2_eq = bath::thermal_energy(model.temperature(), w0, model.hbar());
  p.mixed_coefficient =
      model.temperature().is_zero_temperature() ? 0.0 : k * a / (model.beta() * denom);
  return p;
}

namespace {

// e^{-G t} cos(W t), e^{-G t} sin(W t)/W for W^2 = omega2 (continued for omega2 <= 0)
std::pair<double, double> damped_pair(double gamma, double omega2, double t) {
  if (omega2 > 0.0) {
    const double w = std::sqrt(omega2);
    const double e = std::exp(-gamma * t);
    return {e * std::cos(w * t), e * std::sin(w * t) / w};
  }
  if (omega2 < 0.0) {
    const double w = std::sqrt(-omega2);
    const double slow = std::exp((w - gamma) * t);
    const double fast = std::exp(-(w + gamma) * t);
    return {0.5 * (slow + fast), 0.5 * (slow - fast) / w};
  }
  const double e = std::exp(-gamma * t);
  return {e, t * e};
}

} // namespace

AmplitudeValue amplitude(const QbmRates& rates, double t, AmplitudeForm form) {
  if (!(t >= 0.0)) {
    throw DomainError("amplitude: t must be >= 0");
  }
  const double g = rates.gamma;
  const double w2 = rates.omega2;
  const auto [c, s] = damped_pair(g, w2, t);
  AmplitudeValue out;
  if (form == AmplitudeForm::Markov) {
    out.a = s;
    out.adot = c - g * s;
    return out;
  }
  const double lam = rates.lambda;
  const double d = (lam - g) * (lam - g) + w2;
  const double scale = lam * lam + g * g + std::abs(w2);
  if (std::abs(d) <= 1e-12 * scale) {
    // triple root -g: A = (t + g t^2) e^{-g t}
    const double e = std::exp(-g * t);
    out.a = (t + g * t * t) * e;
    out.adot = (1.0 + g * t - g * g * t * t) * e;
    out.degenerate = true;
    return out;
  }
  const double e = std::exp(-lam * t);
  const double k = lam * lam + w2 - g * g;
  out.a = (2.0 * g * (e - c) + k * s) / d;
  // C' = -g C - W^2 S, S' = C - g S
  out.adot = (2.0 * g * (-lam * e + g * c + w2 * s) + k * (c - g * s)) / d;
  return out;
}

double mean_displacement(const QbmRates& rates, const OscillatorMeanState& init, double t,
                         AmplitudeForm form) {
  const auto v = amplitude(rates, t, form);
  return v.adot * init.q_mean + v.a * init.p_mean;
}

double kappa_critical(const QbmModel& model) { return 2.0 * model.omega0(); }

std::optional<double> kappa_critical_exact(double omega0, double alpha, double kappa_max_factor) {
  if (!(omega0 > 0.0) || !(alpha > 0.0)) {
    throw DomainError("kappa_critical_exact: omega0 and alpha must be > 0");
  }
  auto disc = [&](double k) {
    return num::cubic_discriminant(alpha, omega0 * omega0 + alpha * k, alpha * omega0 * omega0);
  };
  constexpr int kScan = 400;
  const double lo = 1e-4 * omega0;
  const double hi = kappa_max_factor * omega0;
  const double ratio = std::pow(hi / lo, 1.0 / kScan);
  double prev = lo;
  double prev_val = disc(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double k = lo * std::pow(ratio, i);
    const double v = disc(k);
    if ((v > 0.0) != (prev_val > 0.0)) {
      return num::bisect(disc, prev, k, 1e-14 * k);
    }
    prev = k;
    prev_val = v;
  }
  return std::nullopt;
}

double slowest_rate_markov(const QbmModel& model) {
  const double k = model.kappa();
  const double kc = kappa_critical(model);
  if (k <= kc) return -0.5 * k;
  const double x = kc / k;
  return -0.5 * k * x * x / (1.0 + std::sqrt(1.0 - x * x));
}

DiscretizedBath discretize_bath(const QbmModel& model, int n_osc, double omega_max,
                                BathGrid grid) {
  if (n_osc < 100) {
    throw DomainError("discretize_bath: n_osc must be >= 100");
  }
  if (!(omega_max >= 10.0 * model.alpha())) {
    std::ostringstream msg;
    msg << "discretize_bath: omega_max " << omega_max << " must be >= 10 alpha = "
        << 10.0 * model.alpha();
    throw DomainError(msg.str());
  }
  DiscretizedBath out;
  out.grid = grid;
  out.frequencies.resize(n_osc);
  out.couplings.resize(n_osc);
  out.widths.resize(n_osc);
  if (grid == BathGrid::Uniform) {
    const double dw = omega_max / n_osc;
    for (int n = 0; n < n_osc; ++n) {
      out.frequencies[n] = (n + 0.5) * dw;
      out.widths[n] = dw;
    }
  } else {
    const double lo = omega_max * kGeometricGridSpan;
    const double log_ratio = std::log(omega_max / lo) / n_osc;
    for (int n = 0; n < n_osc; ++n) {
      const double left = lo * std::exp(log_ratio * n);
      const double right = n + 1 == n_osc ? omega_max : lo * std::exp(log_ratio * (n + 1));
      out.frequencies[n] = std::sqrt(left * right);
      out.widths[n] = right - left;
    }
  }
  for (int n = 0; n < n_osc; ++n) {
    out.couplings[n] =
        std::sqrt(bath::spectral_gamma(model.bath(), out.frequencies[n]) * out.widths[n]);
  }
  return out;
}

double recurrence_time(const DiscretizedBath& bath, double omega0) {
  if (bath.frequencies.empty()) {
    throw DomainError("recurrence_time: empty bath");
  }
  std::size_t nearest = 0;
  for (std::size_t n = 1; n < bath.frequencies.size(); ++n) {
    if (std::abs(bath.frequencies[n] - omega0) < std::abs(bath.frequencies[nearest] - omega0)) {
      nearest = n;
    }
  }
  return 2.0 * std::numbers::pi / bath.widths[nearest];
}

OracleResult finite_bath_oracle(const QbmModel& model, int n_osc, double omega_max,
                                const OscillatorMeanState& init, std::span<const double> times,
                                BathGrid grid) {
  const DiscretizedBath bath = discretize_bath(model, n_osc, omega_max, grid);
  OracleResult out;
  out.recurrence_time = recurrence_time(bath, model.omega0());
  const double horizon = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
  if (horizon > 0.5 * out.recurrence_time) {
    std::ostringstream msg;
    msg << "finite_bath_oracle: final time " << horizon << " exceeds half the recurrence time "
        << 0.5 * out.recurrence_time << " of the discretised bath";
    throw DomainError(msg.str());
  }

  const Eigen::Index n = n_osc;
  const Eigen::Map<const Eigen::VectorXd> w(bath.frequencies.data(), n);
  const Eigen::Map<const Eigen::VectorXd> eps(bath.couplings.data(), n);
  const Eigen::VectorXd w2 = w.array().square();
  const double counter_term = (eps.array().square() / w2.array()).sum();
  const double w0 = model.omega0();
  const double renormalized = w0 * w0 + counter_term;

  // state: Q, P, Q_1..Q_n, P_1..P_n
  auto apply = [&](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const auto qn = y.segment(2, n);
    const auto pn = y.segment(2 + n, n);
    dy.resize(y.size());
    dy[0] = y[1];
    dy[1] = -renormalized * y[0] + eps.dot(qn);
    dy.segment(2, n) = pn;
    dy.segment(2 + n, n) = -w2.cwiseProduct(qn) + y[0] * eps;
  };
  auto energy = [&](const Eigen::VectorXd& y) {
    const auto qn = y.segment(2, n);
    const auto pn = y.segment(2 + n, n);
    return 0.5 * (y[1] * y[1] + renormalized * y[0] * y[0]) +
           0.5 * (pn.squaredNorm() + w2.dot(qn.cwiseProduct(qn))) - y[0] * eps.dot(qn);
  };

  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(2 + 2 * n);
  y0[0] = init.q_mean;
  y0[1] = init.p_mean;
  const double top = std::max({omega_max, w0, std::sqrt(renormalized)});
  const double step = tol::kOracleStepOmega / top;
  const auto traj = num::linear_ode_rk4(apply, y0, times, step, top, energy);
  out.steps = traj.steps;
  out.energy_drift = traj.max_invariant_drift;
  out.q_mean.reserve(times.size());
  out.p_mean.reserve(times.size());
  for (const auto& s : traj.states) {
    out.q_mean.push_back(s[0]);
    out.p_mean.push_back(s[1]);
  }
  return out;
}

UllersmaBound ullersma_bound(const QbmModel& model) {
  const double w2 = model.omega0() * model.omega0();
  return {w2 / model.alpha(), ullersma_to_qbm_omega0_sq(w2, model.kappa(), model.alpha())};
}

double ullersma_to_qbm_omega0_sq(double omega0_sq, double kappa, double alpha) {
  return omega0_sq + kappa * alpha;
}

double qbm_to_ullersma_omega0_sq(double omega0_sq, double kappa, double alpha) {
  return omega0_sq - kappa * alpha;
}

double ullersma_kappa_critical(double omega0, double alpha) {
  // kappa^2/4 + alpha kappa - omega0^2 = 0, positive root without cancellation
  return 2.0 * omega0 * omega0 / (alpha + std::sqrt(alpha * alpha + omega0 * omega0));
}

std::complex<double> g_function(const QbmModel& model, std::complex<double> z) {
  const auto& spec = model.bath();
  const double w0 = model.omega0();
  auto gamma = [&](double w) { return bath::spectral_gamma(spec, w); };

  const double static_shift = num::adaptive_quadrature(
      [&](double w) { return w == 0.0 ? 0.0 : gamma(w) / (w * w); }, 0.0, num::kInf).value;

  const std::complex<double> z2 = z * z;
  std::complex<double> dynamic;
  if (z2.imag() != 0.0) {
    // 1/(z2 - w^2) split into real and imaginary parts
    auto re = [&](double w) {
      const std::complex<double> d = z2 - w * w;
      return gamma(w) * d.real() / std::norm(d);
    };
    auto im = [&](double w) {
      const std::complex<double> d = z2 - w * w;
      return -gamma(w) * d.imag() / std::norm(d);
    };
    dynamic = {num::adaptive_quadrature(re, 0.0, num::kInf).value,
               num::adaptive_quadrature(im, 0.0, num::kInf).value};
  } else if (z2.real() > 0.0) {
    const double pole = std::sqrt(z2.real());
    const double poles[] = {pole};
    auto f = [&](double w) { return gamma(w) / ((pole - w) * (pole + w)); };
    dynamic = num::pv_integral(f, poles, 0.0, num::kInf);
  } else {
    auto f = [&](double w) { return gamma(w) / (z2.real() - w * w); };
    dynamic = num::adaptive_quadrature(f, 0.0, num::kInf).value;
  }
  return z2 - w0 * w0 - static_shift - dynamic;
}

} // namespace overdamp::qbm
