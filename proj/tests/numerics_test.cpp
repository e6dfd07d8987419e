#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include "overdamp/eigen.hpp"
#include "overdamp/errors.hpp"
#include "overdamp/ode.hpp"
#include "overdamp/quadrature.hpp"
#include "overdamp/random.hpp"
#include "overdamp/roots.hpp"
#include "overdamp/special.hpp"
#include "support/oracles.hpp"

using namespace overdamp;
using doctest::Approx;

TEST_SUITE("quadrature") {
  TEST_CASE("polynomial on the unit interval") {
    const auto r = num::adaptive_quadrature([](double x) { return x * x; }, 0.0, 1.0, 1e-13);
    CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-12);
    CHECK(r.error >= 0.0);
    CHECK(r.panels >= 1);
  }

  TEST_CASE("damped cosine on the half line") {
    const double w = 2.0;
    const auto r = num::adaptive_quadrature(
        [w](double t) { return std::exp(-t) * std::cos(w * t); }, 0.0, num::kInf);
    CHECK(std::abs(r.value - 1.0 / (1.0 + w * w)) < 1e-9);
  }

  TEST_CASE("odd integrand on a symmetric interval") {
    const auto r = num::adaptive_quadrature([](double x) { return x * std::exp(-x * x); }, -3, 3);
    CHECK(std::abs(r.value) < 1e-14);
  }

  TEST_CASE("panel budget exhaustion is reported") {
    CHECK_THROWS_AS(num::adaptive_quadrature([](double x) { return std::sin(1.0 / x); }, 1e-9, 1.0,
                                             1e-14, 1e-300, 8),
                    NumericalError);
  }

  TEST_CASE("oscillatory tail agrees with the closed form") {
    // int_0^inf cos(w t) / (1 + t^2) dt = (pi / 2) e^{-w}
    const auto r = num::fourier_integral([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 3.0,
                                         num::Trig::Cos, 20.0);
    CHECK(r.value == Approx(0.5 * std::numbers::pi * std::exp(-3.0)).epsilon(1e-7));
  }

  TEST_CASE("principal values") {
    const double pole0[] = {0.0};
    CHECK(std::abs(num::pv_integral([](double x) { return 1.0 / x; }, pole0, -2.0, 2.0)) < 1e-10);

    const double pole1[] = {1.0};
    const double v = num::pv_integral(
        [](double x) { return 1.0 / ((x - 1.0) * (x * x + 1.0)); }, pole1, -num::kInf, num::kInf);
    CHECK(v == Approx(-std::numbers::pi / 2.0).epsilon(1e-8));

    // an asymmetric case against the singularity-subtraction oracle
    auto g = [](double x) { return std::exp(x); };
    const double p[] = {0.3};
    const double ref = oracle::pv_subtracted(g, 0.3, -1.0, 2.0, 20000);
    CHECK(num::pv_integral([&](double x) { return g(x) / (x - 0.3); }, p, -1.0, 2.0) ==
          Approx(ref).epsilon(1e-8));
  }

  TEST_CASE("pole on an endpoint is refused") {
    const double pole[] = {1.0};
    CHECK_THROWS_AS(num::pv_integral([](double x) { return 1.0 / (x - 1.0); }, pole, 1.0, 2.0),
                    DomainError);
  }

  TEST_CASE("pairwise summation keeps small terms") {
    std::vector<double> v(1'000'000, 0.1);
    CHECK(num::pairwise_sum(v) == Approx(100000.0).epsilon(1e-14));
  }
}

TEST_SUITE("cubic roots") {
  TEST_CASE("three distinct real roots") {
    const auto r = num::cubic_roots(6.0, 11.0, 6.0);
    REQUIRE(r.real_count == 3);
    CHECK(r.roots[0].real() == Approx(-3.0).epsilon(1e-14));
    CHECK(r.roots[1].real() == Approx(-2.0).epsilon(1e-14));
    CHECK(r.roots[2].real() == Approx(-1.0).epsilon(1e-14));
    CHECK(r.discriminant > 0.0);
  }

  TEST_CASE("one real root and a conjugate pair") {
    const auto r = num::cubic_roots(100.0, 101.0, 100.0);
    const auto ref = oracle::cubic_roots(100.0, 101.0, 100.0);
    REQUIRE(r.real_count == 1);
    CHECK(r.roots[0].real() == Approx(ref[0].real()).epsilon(1e-13));
    CHECK(r.roots[1].real() == Approx(ref[2].real()).epsilon(1e-12));
    CHECK(r.roots[1].imag() == Approx(ref[2].imag()).epsilon(1e-12));
    CHECK(r.roots[1] == std::conj(r.roots[2]));
    CHECK(r.roots[0].real() == Approx(-98.98989899).epsilon(1e-9));
    CHECK(r.roots[1].imag() == Approx(0.86898106).epsilon(1e-7));
    CHECK(r.max_residual <= 1e-12 * 101.0);
  }

  TEST_CASE("double root is flagged") {
    const auto r = num::cubic_roots(4.0, 5.0, 2.0); // (s+1)^2 (s+2)
    CHECK(r.multiple_root);
    CHECK(r.roots[0].real() == Approx(-2.0).epsilon(1e-10));
  }

  TEST_CASE("residuals over a random sweep") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 2000; ++i) {
      const double c2 = dist(gen), c1 = dist(gen), c0 = dist(gen);
      const auto r = num::cubic_roots(c2, c1, c0);
      const double scale = std::max({1.0, std::abs(c2), std::abs(c1), std::abs(c0)});
      for (const auto& s : r.roots) {
        const double mag = std::max(1.0, std::abs(s));
        CHECK(std::abs(((s + c2) * s + c1) * s + c0) <= 1e-12 * scale * mag * mag * mag);
      }
    }
  }

  TEST_CASE("bisection") {
    const double x = num::bisect([](double v) { return v * v - 2.0; }, 0.0, 2.0, 1e-15);
    CHECK(x == Approx(std::numbers::sqrt2).epsilon(1e-14));
    CHECK_THROWS_AS(num::bisect([](double v) { return v * v + 1.0; }, 0.0, 2.0, 1e-10), DomainError);
  }
}

TEST_SUITE("bessel") {
  TEST_CASE("small arguments") {
    CHECK(num::bessel_j1(0.0) == 0.0);
    CHECK(num::bessel_j1(1e-8) / 1e-8 == Approx(0.5).epsilon(1e-14));
    CHECK(num::bessel_j1(1.0) == Approx(0.4400505857).epsilon(1e-10));
    CHECK(num::bessel_j1(-1.0) == -num::bessel_j1(1.0));
  }

  TEST_CASE("series region against the 50-term oracle") {
    for (double u = 0.05; u <= 12.0; u += 0.173) {
      CHECK(num::bessel_j1(u) == Approx(oracle::bessel_j1_series(u)).epsilon(1e-10));
    }
  }

  TEST_CASE("asymptotic region against Boost") {
    for (double u : {12.5, 16.9, 17.1, 25.0, 100.0, 1234.5, 1e5, 1e6}) {
      const double ref = boost::math::cyl_bessel_j(1, u);
      CHECK(std::abs(num::bessel_j1(u) - ref) <= 1e-10 * std::max(std::abs(ref), 1e-3));
    }
  }

  TEST_CASE("x coth x") {
    CHECK(num::x_coth_x(0.0) == 1.0);
    CHECK(num::x_coth_x(1.0) == Approx(1.0 / std::tanh(1.0)).epsilon(1e-15));
    CHECK(num::x_coth_x(1e-6) == Approx(1.0).epsilon(1e-12));
    CHECK(num::x_coth_x(800.0) == Approx(800.0).epsilon(1e-15));
  }
}

TEST_SUITE("random") {
  TEST_CASE("same seed, same stream") {
    CHECK(num::gaussian_stream(42, 1000) == num::gaussian_stream(42, 1000));
    CHECK(num::gaussian_stream(42, 10) != num::gaussian_stream(43, 10));
  }

  TEST_CASE("moments over a million draws") {
    const auto v = num::gaussian_stream(7, 1'000'000);
    double mean = 0.0, var = 0.0, lag = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      var += (v[i] - mean) * (v[i] - mean);
      if (i) lag += (v[i] - mean) * (v[i - 1] - mean);
    }
    var /= v.size();
    lag /= (v.size() - 1) * var;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(1e6));
    CHECK(var >= 0.994);
    CHECK(var <= 1.006);
    CHECK(std::abs(lag) < 4.0 / std::sqrt(1e6));
  }

  TEST_CASE("two seeds are uncorrelated") {
    const auto a = num::gaussian_stream(1, 100'000);
    const auto b = num::gaussian_stream(2, 100'000);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sab += a[i] * b[i];
      saa += a[i] * a[i];
      sbb += b[i] * b[i];
    }
    CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 0.01);
  }

  TEST_CASE("stream is reproducible draw by draw") {
    num::GaussianStream s(5);
    const auto ref = num::gaussian_stream(5, 6);
    for (double r : ref) CHECK(s.next() == r);
  }
}

TEST_SUITE("eigensolvers") {
  TEST_CASE("identity and swap") {
    const auto id = num::symmetric_eig(Eigen::MatrixXd::Identity(5, 5));
    for (int i = 0; i < 5; ++i) CHECK(id.values[i] == Approx(1.0));
    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    const auto s = num::symmetric_eig(swap);
    CHECK(s.values[0] == Approx(-1.0));
    CHECK(s.values[1] == Approx(1.0));
  }

  TEST_CASE("random symmetric 200x200 meets the residual contract") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> dist;
    Eigen::MatrixXd a(200, 200);
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = dist(gen);
    const auto d = num::symmetric_eig(a);
    CHECK(d.max_residual <= 1e-10);
    CHECK(d.orthogonality_error <= 1e-10);
    for (int i = 1; i < 200; ++i) CHECK(d.values[i] >= d.values[i - 1]);
  }

  TEST_CASE("asymmetric input is refused") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 1 + 1e-15, 0;
    CHECK_THROWS_AS(num::symmetric_eig(a), DomainError);
  }

  TEST_CASE("general eigenvalues of a rotation generator") {
    Eigen::MatrixXcd m(2, 2);
    m << 0, -2, 2, 0;
    auto ev = num::general_eig(m);
    std::vector<std::complex<double>> got(ev.data(), ev.data() + 2);
    CHECK(oracle::multiset_distance(got, {{0, 2}, {0, -2}}) < 1e-12);
    CHECK_THROWS_AS(num::general_eig(Eigen::MatrixXcd::Zero(300, 300)), DomainError);
  }
}

TEST_SUITE("rk4") {
  auto oscillator = [](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.resize(2);
    dy[0] = y[1];
    dy[1] = -y[0];
  };

  double period_error(double step) {
    Eigen::VectorXd y0(2);
    y0 << 1.0, 0.0;
    const double times[] = {2.0 * std::numbers::pi};
    const auto tr = num::linear_ode_rk4(oscillator, y0, times, step, 1.0);
    return std::abs(tr.states[0][0] - 1.0) + std::abs(tr.states[0][1]);
  }

  TEST_CASE("fourth-order convergence") {
    const double ratio = period_error(0.2) / period_error(0.1);
    CHECK(ratio == Approx(16.0).epsilon(0.1));
  }

  TEST_CASE("zero generator keeps the state") {
    Eigen::VectorXd y0(3);
    y0 << 1, 2, 3;
    const double times[] = {0.0, 1.0, 5.0};
    const auto tr = num::linear_ode_rk4(
        [](const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = Eigen::VectorXd::Zero(y.size()); },
        y0, times, 0.1, 0.0);
    for (const auto& s : tr.states) CHECK((s - y0).norm() == 0.0);
  }

  TEST_CASE("radius drift per period at T/1000") {
    Eigen::VectorXd y0(2);
    y0 << 1.0, 0.0;
    const double period = 2.0 * std::numbers::pi;
    const double times[] = {period};
    const auto tr = num::linear_ode_rk4(oscillator, y0, times, period / 1000.0, 1.0,
                                        [](const Eigen::VectorXd& y) { return y.squaredNorm(); });
    CHECK(tr.max_invariant_drift < 1e-9);
  }

  TEST_CASE("step beyond the stability bound is refused") {
    Eigen::VectorXd y0 = Eigen::VectorXd::Ones(2);
    const double times[] = {1.0};
    CHECK_THROWS_AS(num::linear_ode_rk4(oscillator, y0, times, 3.0, 1.0), DomainError);
  }
}
