#include "overdamp/damped_spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "overdamp/errors.hpp"
#include "overdamp/quadrature.hpp"
#include "overdamp/roots.hpp"

namespace overdamp::spin {

SpinModel::SpinModel(double omega0, double hbar) : omega0_(omega0), hbar_(hbar) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw DomainError("SpinModel: omega0 must be finite and > 0");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("SpinModel: hbar must be finite and > 0");
  }
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

std::string_view regime_name(Regime r) {
  switch (r) {
  case Regime::Normal:
    return "normal";
  case Regime::Critical:
    return "critical";
  case Regime::Overdamped:
    return "overdamped";
  }
  return "unknown";
}

MarkovRates markov_rates(const SpinModel& spin, const SpectralFunction& bath_ft,
                         std::optional<std::pair<double, double>> support) {
  const double w0 = spin.omega0();
  const double hbar = spin.hbar();
  const double up = bath_ft(w0);
  const double down = bath_ft(-w0);
  const double sum = up + down;
  if (!(sum > 0.0)) {
    throw DomainError("markov_rates: alpha~(w0) + alpha~(-w0) vanishes; z_inf undefined");
  }

  auto integrand = [&](double w) { return bath_ft(w) / ((w0 - w) * (w0 + w)); };
  double pv = 0.0;
  if (support) {
    const auto [lo, hi] = *support;
    if (!(lo < hi)) {
      throw DomainError("markov_rates: support interval must satisfy lo < hi");
    }
    const double margin = 1e-9 * (hi - lo);
    std::vector<double> poles;
    for (double p : {-w0, w0}) {
      if (p > lo + margin && p < hi - margin) poles.push_back(p);
    }
    pv = num::pv_integral(integrand, poles, lo, hi);
  } else {
    const double poles[] = {-w0, w0};
    pv = num::pv_integral(integrand, poles, -num::kInf, num::kInf);
  }

  MarkovRates r;
  r.gamma = std::numbers::pi / (hbar * hbar) * sum;
  const double w2_plus_g2 = w0 * w0 + 4.0 * w0 * w0 / (hbar * hbar) * pv;
  r.omega2 = w2_plus_g2 - r.gamma * r.gamma;
  r.z_inf = (down - up) / sum;
  return r;
}

TimeDependentRates rates_time_dependent(const SpinModel& spin, const CorrelatorFunction& correlator,
                                        double t) {
  if (!(t >= 0.0)) {
    throw DomainError("rates_time_dependent: t must be >= 0");
  }
  const double w0 = spin.omega0();
  const double h2 = spin.hbar() * spin.hbar();
  TimeDependentRates out;
  out.omega2 = w0 * w0;
  if (t == 0.0) {
    return out;
  }
  auto cos_c = [&](double tau) { return std::cos(w0 * tau) * correlator(tau).c; };
  auto sin_c = [&](double tau) { return std::sin(w0 * tau) * correlator(tau).c; };
  auto sin_d = [&](double tau) { return std::sin(w0 * tau) * correlator(tau).d; };
  const double ic = num::adaptive_quadrature(cos_c, 0.0, t).value;
  const double is = num::adaptive_quadrature(sin_c, 0.0, t).value;
  const double id = num::adaptive_quadrature(sin_d, 0.0, t).value;
  out.gamma = 2.0 / h2 * ic;
  out.omega2 = w0 * w0 + 4.0 / h2 * w0 * is - out.gamma * out.gamma;
  out.gamma_z_inf = 2.0 / h2 * id;
  return out;
}

namespace {

// e^{-G t} cos(W t) and e^{-G t} sin(W t)/W with W^2 = omega2, continued to
// cosh/sinh for omega2 < 0 and to 1, t at omega2 = 0.
struct DampedPair {
  double c;
  double s;
};

DampedPair damped_pair(double gamma, double omega2, double t) {
  if (omega2 > 0.0) {
    const double w = std::sqrt(omega2);
    const double e = std::exp(-gamma * t);
    return {e * std::cos(w * t), e * std::sin(w * t) / w};
  }
  if (omega2 < 0.0) {
    const double w = std::sqrt(-omega2);
    // split the hyperbolic functions so large t cannot overflow
    const double slow = std::exp((w - gamma) * t);
    const double fast = std::exp(-(w + gamma) * t);
    return {0.5 * (slow + fast), 0.5 * (slow - fast) / w};
  }
  const double e = std::exp(-gamma * t);
  return {e, t * e};
}

} // namespace

std::vector<BlochVector> evolve(const MarkovRates& rates, const SpinModel& spin,
                                const BlochVector& b0, std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw DomainError("evolve: time grid must be nonnegative and ascending");
    }
  }
  const double w0 = spin.omega0();
  const double g = rates.gamma;
  const double w2g2 = rates.omega2_plus_gamma2();
  const double z_inf = rates.z_inf.value_or(b0.z);

  std::vector<BlochVector> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const auto [c, s] = damped_pair(g, rates.omega2, t);
    BlochVector& b = out[i];
    b.x = b0.x * c + (b0.x * g - b0.y * w0) * s;
    b.y = b0.y * c + (b0.x * w2g2 / w0 - b0.y * g) * s;
    b.z = z_inf + (b0.z - z_inf) * std::exp(-2.0 * g * t);
  }
  return out;
}

ModeSet modes(const MarkovRates& rates) {
  const double g = rates.gamma;
  ModeSet s;
  s[0] = 0.0;
  s[1] = -2.0 * g;
  if (rates.omega2 > 0.0) {
    const double w = std::sqrt(rates.omega2);
    s[2] = {-g, w};
    s[3] = std::conj(s[2]);
  } else {
    const double w = std::sqrt(-rates.omega2);
    s[2] = -g + w;
    s[3] = -g - w;
  }
  return s;
}

Regime classify(const MarkovRates& rates, const SpinModel& spin, double tol) {
  if (!(tol > 0.0)) {
    throw DomainError("classify: tol must be > 0");
  }
  const double w0 = spin.omega0();
  const double scale = std::max(w0 * w0, rates.gamma * rates.gamma);
  if (rates.omega2 > tol * scale) return Regime::Normal;
  if (rates.omega2 < -tol * scale) return Regime::Overdamped;
  return Regime::Critical;
}

double locate_critical_coupling(const std::function<MarkovRates(double)>& rates_at, double lo,
                                double hi, double rel_tol) {
  if (!(lo < hi)) {
    throw DomainError("locate_critical_coupling: requires lo < hi");
  }
  auto f = [&](double k) { return rates_at(k).omega2; };
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream msg;
    msg << "locate_critical_coupling: Omega^2 has the same sign at " << lo << " (" << flo
        << ") and " << hi << " (" << fhi << ")";
    throw DomainError(msg.str());
  }
  return num::bisect(f, lo, hi, rel_tol * hi);
}

SpectralFunction drude_spectral_density(const bath::BathSpec& bath, const bath::ThermalState& temp,
                                        bool high_temperature) {
  if (high_temperature) {
    return [bath, temp](double w) { return bath::correlator_ft_high_temperature(bath, temp, w); };
  }
  return [bath, temp](double w) {
    return w == 0.0 ? bath::correlator_ft_zero_limit(bath, temp)
                    : bath::correlator_ft(bath, temp, w);
  };
}

bool high_temperature_valid(const SpinModel& spin, const bath::ThermalState& temp) {
  return !temp.is_zero_temperature() &&
         temp.beta() * spin.hbar() * spin.omega0() < kHighTemperatureLimit;
}

namespace {

void require_finite_temperature(const bath::ThermalState& temp, const char* context) {
  if (temp.is_zero_temperature()) {
    std::ostringstream msg;
    msg << context << ": needs a finite temperature";
    throw DomainError(msg.str());
  }
}

} // namespace

MarkovRates spin_boson_highT(const SpinModel& spin, const bath::BathSpec& bath,
                             const bath::ThermalState& temp) {
  bath.require_unit(bath::CouplingUnit::Action, "spin_boson_highT");
  require_finite_temperature(temp, "spin_boson_highT");
  const double k = bath.kappa();
  const double a2 = bath.alpha() * bath.alpha();
  const double w0 = spin.omega0();
  const double hbar = spin.hbar();
  const double b = temp.beta();
  const double lorentz = a2 / (a2 + w0 * w0);

  MarkovRates r;
  r.gamma = 2.0 * k * lorentz / (b * hbar * hbar);
  const double w2g2 = w0 * w0 + 4.0 * k * lorentz / bath.alpha() * w0 * w0 / (b * hbar * hbar);
  r.omega2 = w2g2 - r.gamma * r.gamma;
  if (k > 0.0) {
    // Gamma z_inf = -kappa alpha^2 w0 / (hbar (alpha^2 + w0^2))
    r.z_inf = -k * lorentz * w0 / hbar / r.gamma;
  }
  return r;
}

MarkovRates spin_boson_limit_rates(double kappa, const SpinModel& spin,
                                   const bath::ThermalState& temp) {
  if (!(kappa >= 0.0)) {
    throw DomainError("spin_boson_limit_rates: kappa must be >= 0");
  }
  require_finite_temperature(temp, "spin_boson_limit_rates");
  const double w0 = spin.omega0();
  const double hbar = spin.hbar();
  MarkovRates r;
  r.gamma = 2.0 * kappa / (temp.beta() * hbar * hbar);
  r.omega2 = w0 * w0 - r.gamma * r.gamma;
  if (kappa > 0.0) {
    r.z_inf = -0.5 * temp.beta() * hbar * w0;
  }
  return r;
}

double spin_boson_kappa_c(const SpinModel& spin, const bath::ThermalState& temp) {
  require_finite_temperature(temp, "spin_boson_kappa_c");
  return 0.5 * spin.hbar() * spin.hbar() * temp.beta() * spin.omega0();
}

ModeSet highT_modes(double kappa, const SpinModel& spin, const bath::ThermalState& temp) {
  const double kc = spin_boson_kappa_c(spin, temp);
  if (!(kappa >= kc)) {
    std::ostringstream msg;
    msg << "highT_modes: kappa " << kappa << " is below kappa_c " << kc
        << "; use modes(spin_boson_limit_rates(...)) on the normal branch";
    throw DomainError(msg.str());
  }
  const double rate = 2.0 * kappa / (spin.hbar() * spin.hbar() * temp.beta());
  const double ratio = kc / kappa;
  const double root = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  ModeSet s;
  s[0] = 0.0;
  s[1] = -2.0 * rate;
  // 1 - sqrt(1 - r^2) written without cancellation
  s[2] = -rate * (ratio * ratio) / (1.0 + root);
  s[3] = -rate * (1.0 + root);
  return s;
}

double highT_slowest_asymptote(double kappa, const SpinModel& spin,
                               const bath::ThermalState& temp) {
  require_finite_temperature(temp, "highT_slowest_asymptote");
  if (!(kappa > 0.0)) {
    throw DomainError("highT_slowest_asymptote: kappa must be > 0");
  }
  const double w0 = spin.omega0();
  return -temp.beta() * spin.hbar() * spin.hbar() * w0 * w0 / (4.0 * kappa);
}

} // namespace overdamp::spin
