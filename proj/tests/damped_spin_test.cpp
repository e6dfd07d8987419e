#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "overdamp/damped_spin.hpp"
#include "overdamp/errors.hpp"

using namespace overdamp;
using namespace overdamp::spin;
using doctest::Approx;

namespace {

std::vector<double> grid(double t_max, int n) {
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = t_max * i / n;
  return t;
}

// Two-mode superposition c3 e^{s3 t} + c4 e^{s4 t} matching value and slope at t = 0.
double superpose(std::complex<double> s3, std::complex<double> s4, double v0, double dv0,
                 double t) {
  const auto c4 = (dv0 - s3 * v0) / (s4 - s3);
  const auto c3 = v0 - c4;
  return (c3 * std::exp(s3 * t) + c4 * std::exp(s4 * t)).real();
}

int sign_changes(const std::vector<double>& v) {
  int n = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if ((v[i] > 0) != (v[i - 1] > 0)) ++n;
  return n;
}

} // namespace

TEST_SUITE("markov rates") {
  const SpinModel spin(1.0);

  TEST_CASE("symmetric spectrum gives no polarisation") {
    const auto r = markov_rates(spin, [](double w) { return std::exp(-w * w); });
    REQUIRE(r.z_inf.has_value());
    CHECK(std::abs(*r.z_inf) < 1e-15);
  }

  TEST_CASE("oscillator bath polarises to -tanh") {
    for (double beta : {0.1, 1.0, 10.0}) {
      const bath::BathSpec spec(0.05, 20.0, bath::CouplingUnit::Action);
      const auto r = markov_rates(spin, drude_spectral_density(spec, bath::ThermalState(beta)));
      CHECK(*r.z_inf == Approx(-std::tanh(beta / 2.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("high-temperature Markov limit") {
    const bath::BathSpec spec(0.002, 1e4, bath::CouplingUnit::Action);
    const bath::ThermalState temp(1e-3);
    const auto r = markov_rates(spin, drude_spectral_density(spec, temp, true));
    CHECK(r.gamma == Approx(2.0 * 0.002 / 1e-3).epsilon(1e-7));
  }

  TEST_CASE("zero spectrum is degenerate") {
    CHECK_THROWS_AS(markov_rates(spin, [](double) { return 0.0; }), DomainError);
  }

  TEST_CASE("shift against a direct principal-value evaluation") {
    // PV int dw / ((1 + w^2)(w0^2 - w^2)) = pi / (1 + w0^2)
    const auto r = markov_rates(SpinModel(2.0), [](double w) { return 1.0 / (1.0 + w * w); });
    const double pv = std::numbers::pi / 5.0;
    const double expected = 4.0 + 4.0 * 4.0 * pv;
    CHECK(r.omega2_plus_gamma2() == Approx(expected).epsilon(1e-8));
  }
}

TEST_SUITE("time-dependent rates") {
  const SpinModel spin(1.0);
  const bath::BathSpec spec(0.01, 20.0, bath::CouplingUnit::Action);
  const bath::ThermalState temp(0.02);
  const CorrelatorFunction corr = [](double t) {
    return bath::correlator_high_temperature(spec, temp, t);
  };
  const auto markov = markov_rates(spin, drude_spectral_density(spec, temp, true));

  TEST_CASE("empty integrals at t = 0") {
    const auto r = rates_time_dependent(spin, corr, 0.0);
    CHECK(r.gamma == 0.0);
    CHECK(r.omega2 == 1.0);
    CHECK(r.gamma_z_inf == 0.0);
  }

  TEST_CASE("approach to the Markov rates") {
    const double alpha = spec.alpha();
    const auto r = rates_time_dependent(spin, corr, 10.0 / alpha);
    CHECK(std::abs(r.gamma - markov.gamma) <= 1.1 * std::exp(-10.0) * markov.gamma);

    const double d1 = std::abs(rates_time_dependent(spin, corr, 4.0 / alpha).gamma - markov.gamma);
    const double d2 = std::abs(rates_time_dependent(spin, corr, 5.0 / alpha).gamma - markov.gamma);
    CHECK(d1 / d2 == Approx(std::numbers::e).epsilon(0.05));

    const auto late = rates_time_dependent(spin, corr, 40.0 / alpha);
    CHECK(late.gamma == Approx(markov.gamma).epsilon(1e-8));
    CHECK(late.omega2 + late.gamma * late.gamma ==
          Approx(markov.omega2_plus_gamma2()).epsilon(1e-8));
    CHECK(late.gamma_z_inf == Approx(markov.gamma * *markov.z_inf).epsilon(1e-8));
  }
}

TEST_SUITE("evolve") {
  const SpinModel spin(1.0);

  TEST_CASE("free precession") {
    const MarkovRates r{0.0, 1.0, std::nullopt};
    const BlochVector b0{0.6, 0.8, 0.0};
    const auto t = grid(10.0, 100);
    const auto b = evolve(r, spin, b0, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(b[i].x == Approx(0.6 * std::cos(t[i]) - 0.8 * std::sin(t[i])).epsilon(1e-13));
      CHECK(std::hypot(b[i].x, b[i].y) == Approx(1.0).epsilon(1e-13));
    }
  }

  TEST_CASE("longitudinal relaxation value") {
    const MarkovRates r{0.1, 0.5, -0.5};
    const double t[] = {5.0};
    CHECK(evolve(r, spin, {0, 0, 1}, t)[0].z == Approx(-0.5 + 1.5 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(evolve(r, spin, {0, 0, 1}, t)[0].z == Approx(0.051819).epsilon(1e-5));
  }

  TEST_CASE("z ignores the transverse components") {
    const MarkovRates r{0.3, -0.2, 0.4};
    const auto t = grid(5.0, 50);
    const auto a = evolve(r, spin, {0.0, 0.0, 0.2}, t);
    const auto b = evolve(r, spin, {0.7, -0.5, 0.2}, t);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(a[i].z == b[i].z);
  }

  TEST_CASE("trajectory equals the mode superposition") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const MarkovRates& r : {MarkovRates{0.2, 0.7, 0.1}, MarkovRates{0.9, -0.3, -0.2},
                                 MarkovRates{0.05, 3.0, 0.0}}) {
      const auto s = modes(r);
      const double w0 = spin.omega0();
      const double w = r.omega2_plus_gamma2();
      for (int k = 0; k < 5; ++k) {
        const BlochVector b0{u(gen), u(gen), u(gen)};
        const auto t = grid(8.0, 40);
        const auto b = evolve(r, spin, b0, t);
        for (std::size_t i = 0; i < t.size(); ++i) {
          const double x = superpose(s[2], s[3], b0.x, -w0 * b0.y, t[i]);
          const double y = superpose(s[2], s[3], b0.y, w / w0 * b0.x - 2.0 * r.gamma * b0.y, t[i]);
          const double z = *r.z_inf + (b0.z - *r.z_inf) * std::exp(s[1].real() * t[i]);
          CHECK(std::abs(b[i].x - x) <= 1e-10);
          CHECK(std::abs(b[i].y - y) <= 1e-10);
          CHECK(std::abs(b[i].z - z) <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("critical damping uses the t e^{-Gamma t} limit") {
    const MarkovRates crit{1.0, 0.0, 0.0};
    const MarkovRates near{1.0, 1e-12, 0.0};
    const auto t = grid(6.0, 30);
    const auto a = evolve(crit, spin, {1, 0, 0}, t);
    const auto b = evolve(near, spin, {1, 0, 0}, t);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(a[i].x == Approx(b[i].x).epsilon(1e-9));
  }

  TEST_CASE("overdamped x changes sign at most once") {
    const MarkovRates r{2.0, -3.0, 0.0};
    const auto t = grid(20.0, 4000);
    for (const BlochVector b0 : {BlochVector{1, 0, 0}, BlochVector{0.3, 0.9, 0}, BlochVector{-1, 0.2, 0}}) {
      const auto b = evolve(r, spin, b0, t);
      std::vector<double> x;
      for (const auto& v : b) x.push_back(v.x);
      CHECK(sign_changes(x) <= 1);
      std::vector<double> dx;
      for (std::size_t i = 1; i < x.size(); ++i) dx.push_back(x[i] - x[i - 1]);
      CHECK(sign_changes(dx) <= 1);
    }
  }

  TEST_CASE("bath-derived rates keep the Bloch vector in the unit ball") {
    for (double kappa : {0.001, 0.005, 0.05}) {
      const bath::BathSpec spec(kappa, 1000.0, bath::CouplingUnit::Action);
      const auto r = markov_rates(spin, drude_spectral_density(spec, bath::ThermalState(0.01)));
      const auto t = grid(20.0, 4000);
      for (const BlochVector b0 : {BlochVector{1, 0, 0}, BlochVector{0, 1, 0},
                                   BlochVector{0.6, 0, -0.8}, BlochVector{0, 0, 1}}) {
        double worst = 0.0;
        for (const auto& b : evolve(r, spin, b0, t)) worst = std::max(worst, b.norm());
        CHECK(worst <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_SUITE("modes and classification") {
  const SpinModel spin(1.0);

  TEST_CASE("normal and overdamped modes") {
    const auto n = modes({1.0, 4.0, 0.0});
    CHECK(n[2] == std::complex<double>(-1.0, 2.0));
    CHECK(n[3] == std::conj(n[2]));
    CHECK(n[1].real() == -2.0);
    CHECK(n[0] == 0.0);
    const auto o = modes({1.0, -0.25, 0.0});
    CHECK(o[2].real() == Approx(-0.5));
    CHECK(o[3].real() == Approx(-1.5));
    const auto c = modes({0.7, 0.0, 0.0});
    CHECK(c[2] == c[3]);
    CHECK(c[2].real() == -0.7);
  }

  TEST_CASE("classification bands") {
    CHECK(classify({0.1, 0.5, 0.0}, spin) == Regime::Normal);
    CHECK(classify({0.1, -0.5, 0.0}, spin) == Regime::Overdamped);
    CHECK(classify({0.1, 1e-12, 0.0}, spin) == Regime::Critical);
    CHECK(regime_name(Regime::Overdamped) == "overdamped");
  }

  TEST_CASE("locating the critical coupling") {
    const bath::ThermalState temp(1.0);
    const SpinModel slow(0.1);
    const double kc = locate_critical_coupling(
        [&](double k) { return spin_boson_limit_rates(k, slow, temp); }, 1e-4, 1.0);
    CHECK(kc == Approx(0.05).epsilon(1e-9));
  }
}

TEST_SUITE("spin-boson closed forms") {
  const SpinModel spin(1.0);
  const bath::ThermalState temp(0.01);

  TEST_CASE("Markov limit of the closed forms") {
    const bath::BathSpec spec(0.003, 1e9, bath::CouplingUnit::Action);
    const auto r = spin_boson_highT(spin, spec, temp);
    CHECK(r.gamma == Approx(2.0 * 0.003 / 0.01).epsilon(1e-12));
    CHECK(r.gamma * *r.z_inf == Approx(-0.003).epsilon(1e-12));
  }

  TEST_CASE("zero coupling") {
    const auto r = spin_boson_highT(spin, bath::BathSpec(0.0, 10.0, bath::CouplingUnit::Action), temp);
    CHECK(r.gamma == 0.0);
    CHECK(r.omega2 == 1.0);
    CHECK_FALSE(r.z_inf.has_value());
  }

  TEST_CASE("coupling units are enforced") {
    CHECK_THROWS_AS(
        spin_boson_highT(spin, bath::BathSpec(0.1, 10.0, bath::CouplingUnit::Frequency), temp),
        DomainError);
  }

  TEST_CASE("critical coupling") {
    CHECK(spin_boson_kappa_c(SpinModel(0.1), bath::ThermalState(1.0)) == Approx(0.05));
    CHECK(spin_boson_kappa_c(SpinModel(0.1), bath::ThermalState(2.0)) == Approx(0.1));
    const auto r = spin_boson_limit_rates(0.05, SpinModel(0.1), bath::ThermalState(1.0));
    CHECK(r.gamma == Approx(0.1));
    CHECK(std::abs(r.omega2) < 1e-15);
  }

  TEST_CASE("overdamped branch modes") {
    const SpinModel s(0.1);
    const bath::ThermalState t(1.0);
    const auto m = highT_modes(0.1, s, t);
    CHECK(m[2].real() == Approx(-0.2 * (1.0 - std::sqrt(0.75))).epsilon(1e-13));
    CHECK(m[2].real() == Approx(-0.026795).epsilon(1e-4));
    CHECK(m[1].real() == Approx(-0.4));
    const double asym = highT_slowest_asymptote(0.1, s, t);
    CHECK(asym == Approx(-0.025));
    CHECK(std::abs(asym - m[2].real()) <= 0.07 * std::abs(m[2].real()));
    const auto at_c = highT_modes(0.05, s, t);
    CHECK(at_c[2].real() == Approx(-0.1));
    CHECK(at_c[3].real() == Approx(-0.1));
    CHECK_THROWS_AS(highT_modes(0.04, s, t), DomainError);
  }

  TEST_CASE("validity flag") {
    CHECK(high_temperature_valid(spin, bath::ThermalState(0.01)));
    CHECK_FALSE(high_temperature_valid(spin, bath::ThermalState(1.0)));
  }
}
