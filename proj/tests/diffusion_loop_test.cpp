#include <cmath>
#include <numbers>

#include <doctest.h>

#include "overdamp/diffusion_loop.hpp"
#include "overdamp/errors.hpp"
#include "support/oracles.hpp"

using namespace overdamp;
using namespace overdamp::loop;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

// Dephasing Liouvillian assembled element by element from H.
Eigen::MatrixXcd reference_generator(const LoopModel& model, double q) {
  const int n = model.n_sites();
  const Eigen::MatrixXd h = model.hamiltonian();
  const double hb = model.hbar();
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n * n, n * n);
  const cd mi(0.0, -1.0 / hb);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int row = a * n + b;
      for (int k = 0; k < n; ++k) {
        l(row, k * n + b) += mi * h(a, k);
        l(row, a * n + k) -= mi * h(k, b);
      }
      if (a != b) l(row, row) -= 2.0 * q / (hb * hb);
    }
  }
  return l;
}

std::vector<cd> union_of_sectors(const LoopModel& model, const DephasingBath& bath) {
  std::vector<cd> all;
  for (const auto& s : full_spectrum(model, bath))
    all.insert(all.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  return all;
}

std::vector<cd> full_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  const auto v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

} // namespace

TEST_SUITE("ring model") {
  TEST_CASE("validation and Hamiltonian") {
    CHECK_THROWS_AS(LoopModel(1, 1.0), DomainError);
    CHECK_THROWS_AS(DephasingBath(-0.1), DomainError);
    const LoopModel m(5, 0.7, 0.3);
    const auto h = m.hamiltonian();
    CHECK(h(0, 1) == -0.7);
    CHECK(h(0, 4) == -0.7);
    CHECK(h(2, 2) == 0.3);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("full generator matches the element-wise Liouvillian") {
    const LoopModel m(5, 0.8, 0.4, 1.2);
    const auto full = build_full_generator(m, DephasingBath(0.35));
    CHECK((full - reference_generator(m, 0.35)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK_THROWS_AS(build_full_generator(LoopModel(kFullGeneratorMaxSites + 1, 1.0), DephasingBath(1.0)),
                    DomainError);
  }

  TEST_CASE("closed ring spectrum") {
    const LoopModel m(6, 1.0, 0.5);
    const auto got = full_eigenvalues(build_full_generator(m, DephasingBath(0.0)));
    std::vector<cd> expected;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        const double ea = 0.5 - 2.0 * std::cos(2.0 * std::numbers::pi * a / 6);
        const double eb = 0.5 - 2.0 * std::cos(2.0 * std::numbers::pi * b / 6);
        expected.emplace_back(0.0, -(ea - eb));
      }
    CHECK(oracle::multiset_distance(got, expected) <= 1e-10);
  }

  TEST_CASE("trace is conserved") {
    const LoopModel m(6, 1.0);
    const auto l = build_full_generator(m, DephasingBath(0.7));
    Eigen::RowVectorXcd trace = Eigen::RowVectorXcd::Zero(36);
    for (int a = 0; a < 6; ++a) trace(a * 6 + a) = 1.0;
    CHECK((trace * l).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_SUITE("Bloch sectors") {
  TEST_CASE("sectors reproduce the full spectrum") {
    for (int n : {4, 6, 8}) {
      for (double q : {0.0, 0.3, 1.7}) {
        const LoopModel m(n, 1.0, 0.2);
        const DephasingBath bath(q);
        const auto full = full_eigenvalues(build_full_generator(m, bath));
        CHECK(oracle::multiset_distance(union_of_sectors(m, bath), full) <= 1e-8);
      }
    }
  }

  TEST_CASE("closed sectors are purely oscillatory") {
    const LoopModel m(10, 1.0);
    for (int n = 1; n <= 10; ++n)
      for (const auto& s : sector_spectrum(m, DephasingBath(0.0), n).eigenvalues)
        CHECK(std::abs(s.real()) <= 1e-10);
  }

  TEST_CASE("stationary state and stability") {
    for (double q : {0.05, 0.5, 3.0}) {
      const LoopModel m(16, 1.0);
      const auto all = full_spectrum(m, DephasingBath(q));
      CHECK(all.back().n == 16);
      double nearest = INFINITY;
      for (const auto& s : all.back().eigenvalues) nearest = std::min(nearest, std::abs(s));
      CHECK(nearest <= 1e-12);
      for (const auto& sec : all) {
        for (const auto& s : sec.eigenvalues) CHECK(s.real() <= 1e-10);
        for (const auto& s : sec.eigenvalues) {
          double gap = INFINITY;
          for (const auto& t : sec.eigenvalues) gap = std::min(gap, std::abs(t - std::conj(s)));
          CHECK(gap <= 1e-9);
        }
      }
    }
    CHECK_THROWS_AS(build_sector(LoopModel(4, 1.0), DephasingBath(1.0), 0), DomainError);
    CHECK_THROWS_AS(build_sector(LoopModel(4, 1.0), DephasingBath(1.0), 5), DomainError);
  }

  TEST_CASE("strong dephasing gives similar real parts") {
    const LoopModel m(16, 1.0);
    const auto s = sector_spectrum(m, DephasingBath(0.2), 3);
    REQUIRE_FALSE(s.diffusive.has_value());
    double total = 0.0;
    for (const auto& v : s.eigenvalues) total += v.real();
    CHECK(total / 16.0 == Approx(-0.4 * 15.0 / 16.0).epsilon(1e-10));
  }
}

TEST_SUITE("diffusive branch") {
  TEST_CASE("closed form example") {
    const LoopModel m(16, 1.0);
    const double q = 2.0 * std::numbers::pi / 16.0;
    const double x = 2.0 * std::sin(std::numbers::pi / 16.0);
    const auto s = diffusive_eigenvalue(m, DephasingBath(1.0), q);
    REQUIRE(s.has_value());
    CHECK(*s == Approx(-2.0 + 2.0 * std::sqrt(1.0 - x * x)).epsilon(1e-14));
    CHECK(*s == Approx(-0.158523).epsilon(1e-5));
  }

  TEST_CASE("branch point and absence") {
    const LoopModel m(16, 1.0);
    const double q = 2.0 * std::numbers::pi / 16.0;
    const double at = 2.0 * std::sin(q / 2.0);
    CHECK(*diffusive_eigenvalue(m, DephasingBath(at), q) == Approx(-2.0 * at).epsilon(1e-12));
    CHECK_FALSE(diffusive_eigenvalue(m, DephasingBath(0.9 * at), q).has_value());
  }

  TEST_CASE("small-q limit") {
    const LoopModel m(400, 1.0);
    const double q = 2.0 * std::numbers::pi / 400.0;
    const auto s = diffusive_eigenvalue(m, DephasingBath(2.0), q);
    CHECK(*s == Approx(-4.0 * std::pow(std::numbers::pi, 2) / (2.0 * 400.0 * 400.0)).epsilon(1e-4));
  }

  TEST_CASE("separated eigenvalue matches the closed form") {
    // the closed form is the infinite-ring limit; the bound state wraps around a
    // finite ring with amplitude ~ ratio^N, so compare where that is negligible
    for (int n_sites : {16, 32}) {
      const LoopModel m(n_sites, 1.0);
      for (double q : {0.5, 1.0, 4.0}) {
        for (int n : {1, 2, n_sites / 2}) {
          const DephasingBath bath(q);
          const auto spec = sector_spectrum(m, bath, n);
          const auto closed = diffusive_eigenvalue(m, bath, bloch_number(m, n));
          CHECK(spec.diffusive.has_value() == closed.has_value());
          const double ratio = 2.0 * std::sin(0.5 * bloch_number(m, n)) / q;
          if (!closed || !spec.diffusive || ratio > 0.4) continue;
          CHECK(std::abs(*spec.diffusive - *closed) <= 1e-8 * std::abs(*closed));
          int real_count = 0;
          for (const auto& v : spec.eigenvalues)
            if (std::abs(v.imag()) <= 1e-9 && std::abs(v - *closed) <= 1e-8) ++real_count;
          CHECK(real_count == 1);
        }
      }
    }
  }

  TEST_CASE("finite rings converge to the closed form") {
    const DephasingBath bath(1.0);
    double prev = INFINITY;
    for (int n_sites : {8, 16, 32, 64}) {
      const LoopModel m(n_sites, 1.0);
      const int n = n_sites / 8; // q = pi / 4
      const double closed = *diffusive_eigenvalue(m, bath, bloch_number(m, n));
      const double err = std::abs(*sector_spectrum(m, bath, n).diffusive - closed);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev <= 1e-8);
  }

  TEST_CASE("monotone in the coupling") {
    const LoopModel m(16, 1.0);
    const double q = 2.0 * std::numbers::pi / 16.0;
    double prev = INFINITY;
    for (double c = 0.5; c <= 5.0; c += 0.5) {
      const double mag = std::abs(*diffusive_eigenvalue(m, DephasingBath(c), q));
      CHECK(mag < prev);
      prev = mag;
    }
  }

  TEST_CASE("critical dephasing strength") {
    CHECK(q_critical(LoopModel(16, 1.0)) == Approx(0.390181).epsilon(1e-5));
    CHECK(q_critical(LoopModel(2, 1.5, 0.0, 2.0)) == Approx(6.0).epsilon(1e-15));
    const double big = q_critical(LoopModel(10000, 1.0));
    CHECK(big * 10000 / (2.0 * std::numbers::pi) == Approx(1.0).epsilon(1e-6));
  }
}

TEST_SUITE("high-temperature mapping") {
  TEST_CASE("Q = kappa / beta") {
    const bath::BathSpec spec(0.5, 100.0, bath::CouplingUnit::Action);
    const bath::ThermalState temp(2.0);
    CHECK(dephasing_from_drude(spec, temp).q_strength() == 0.25);
    const LoopModel m(16, 1.0);
    for (double q : {0.1, 0.2}) {
      CHECK(*dispersion_highT(m, spec, temp, q) ==
            *diffusive_eigenvalue(m, DephasingBath(0.25), q));
    }
  }

  TEST_CASE("dispersion example and small-q coefficient") {
    const bath::BathSpec spec(0.5, 100.0, bath::CouplingUnit::Action);
    const bath::ThermalState temp(1.0);
    const LoopModel m(16, 1.0);
    CHECK(*dispersion_highT(m, spec, temp, 0.1) == Approx(-0.0200).epsilon(0.01));
    CHECK(dispersion_highT_leading(m, spec, temp, 0.1) == Approx(-0.02).epsilon(1e-14));
    const double q = 1e-3;
    CHECK(*dispersion_highT(m, spec, temp, q) / (q * q) == Approx(-2.0).epsilon(1e-5));
  }
}

TEST_SUITE("branch tracking") {
  TEST_CASE("branches vary continuously through the separation") {
    const LoopModel m(12, 1.0);
    std::vector<double> qs;
    for (int k = 0; k <= 200; ++k) qs.push_back(0.05 + 2.0 * k / 200.0);
    const auto rows = track_branches(m, 1, qs);
    REQUIRE(rows.size() == qs.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      REQUIRE(rows[k].size() == 12);
      const auto direct = sector_spectrum(m, DephasingBath(qs[k]), 1).eigenvalues;
      CHECK(oracle::multiset_distance(rows[k], direct) <= 1e-9);
    }
    double worst = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k)
      for (std::size_t j = 0; j < 12; ++j) worst = std::max(worst, std::abs(rows[k][j] - rows[k - 1][j]));
    CHECK(worst <= 0.25);
  }
}
