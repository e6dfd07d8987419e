#include "overdamp/ode.hpp"

#include <cmath>
#include <sstream>

#include "overdamp/errors.hpp"
#include "overdamp/tolerances.hpp"

namespace overdamp::num {

OdeTrajectory linear_ode_rk4(const LinearAction& apply, const Eigen::VectorXd& y0,
                             std::span<const double> times, double step, double omega_max,
                             const Invariant& invariant) {
  if (!(step > 0.0)) {
    throw DomainError("linear_ode_rk4: step must be positive");
  }
  if (omega_max > 0.0 && step * omega_max > tol::kRk4StabilityBound) {
    std::ostringstream msg;
    msg << "linear_ode_rk4: step " << step << " exceeds stability bound "
        << tol::kRk4StabilityBound / omega_max << " for omega_max " << omega_max;
    throw DomainError(msg.str());
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw DomainError("linear_ode_rk4: time grid must be nonnegative and ascending");
    }
  }

  OdeTrajectory out;
  out.states.reserve(times.size());
  const double i0 = invariant ? invariant(y0) : 0.0;
  const double i0_scale = std::max(std::abs(i0), 1e-300);

  const Eigen::Index n = y0.size();
  Eigen::VectorXd y = y0;
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = 0.0;
  for (double target : times) {
    const double span = target - t;
    if (span > 0.0) {
      const long substeps = static_cast<long>(std::ceil(span / step - 1e-12));
      const double h = span / static_cast<double>(substeps);
      for (long s = 0; s < substeps; ++s) {
        apply(y, k1);
        tmp = y + (0.5 * h) * k1;
        apply(tmp, k2);
        tmp = y + (0.5 * h) * k2;
        apply(tmp, k3);
        tmp = y + h * k3;
        apply(tmp, k4);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      out.steps += substeps;
      t = target;
    }
    if (invariant) {
      out.max_invariant_drift =
          std::max(out.max_invariant_drift, std::abs(invariant(y) - i0) / i0_scale);
    }
    out.states.push_back(y);
  }
  return out;
}

} // namespace overdamp::num
