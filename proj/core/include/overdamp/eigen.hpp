#pragma once

#include <Eigen/Dense>

namespace overdamp::num {

struct EigenDecomposition {
  Eigen::VectorXd values;  ///< ascending
  Eigen::MatrixXd vectors; ///< orthonormal columns
  /// max_i ||H v_i - lambda_i v_i|| / ||H||_F (negative when not computed)
  double max_residual = -1.0;
  /// max |V^T V - I| (negative when not computed)
  double orthogonality_error = -1.0;
};

/// Dense symmetric eigendecomposition. The input must be exactly symmetric
/// (DomainError otherwise); NumericalError when the solver does not converge
/// or, with `with_report`, when the residual contract is violated.
EigenDecomposition symmetric_eig(const Eigen::MatrixXd& h, bool with_report = true);

/// Eigenvalues of a general complex matrix, dimension capped at
/// tol::kGeneralEigMaxDim.
Eigen::VectorXcd general_eig(const Eigen::MatrixXcd& m);

} // namespace overdamp::num
