#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace overdamp::num {

/// out = M * y for a linear system dy/dt = M y.
using LinearAction = std::function<void(const Eigen::VectorXd& y, Eigen::VectorXd& out)>;
using Invariant = std::function<double(const Eigen::VectorXd& y)>;

struct OdeTrajectory {
  std::vector<Eigen::VectorXd> states; ///< one per output time
  double max_invariant_drift = 0.0;    ///< max |I(y(t)) - I(y0)| / |I(y0)|
  long steps = 0;
};

/// Classical RK4 for a linear system, sampled on an ascending time grid starting
/// at or after 0 (y0 is the state at t = 0). Each grid interval is split into
/// equal substeps no longer than `step`. Refuses (DomainError) a step above the
/// stability bound tol::kRk4StabilityBound / omega_max.
OdeTrajectory linear_ode_rk4(const LinearAction& apply, const Eigen::VectorXd& y0,
                             std::span<const double> times, double step, double omega_max,
                             const Invariant& invariant = {});

} // namespace overdamp::num
