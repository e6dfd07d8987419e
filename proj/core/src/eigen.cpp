#include "overdamp/eigen.hpp"

#include <sstream>

#include "overdamp/errors.hpp"
#include "overdamp/tolerances.hpp"

namespace overdamp::num {

EigenDecomposition symmetric_eig(const Eigen::MatrixXd& h, bool with_report) {
  if (h.rows() != h.cols()) {
    throw DomainError("symmetric_eig: matrix is not square");
  }
  if (h != h.transpose()) {
    throw DomainError("symmetric_eig: matrix is not exactly symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "symmetric_eig: solver did not converge for dimension " << h.rows();
    throw NumericalError(msg.str());
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  if (with_report && h.size() > 0) {
    const double norm = std::max(h.norm(), 1e-300);
    const Eigen::MatrixXd r = h * out.vectors - out.vectors * out.values.asDiagonal();
    out.max_residual = r.colwise().norm().maxCoeff() / norm;
    const Eigen::MatrixXd gram = out.vectors.transpose() * out.vectors;
    out.orthogonality_error =
        (gram - Eigen::MatrixXd::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff();
    if (out.max_residual > tol::kEigenResidualRel ||
        out.orthogonality_error > tol::kEigenResidualRel) {
      std::ostringstream msg;
      msg << "symmetric_eig: contract violated (residual " << out.max_residual
          << ", orthogonality " << out.orthogonality_error << ")";
      throw NumericalError(msg.str());
    }
  }
  return out;
}

Eigen::VectorXcd general_eig(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw DomainError("general_eig: matrix is not square");
  }
  if (m.rows() > tol::kGeneralEigMaxDim) {
    std::ostringstream msg;
    msg << "general_eig: dimension " << m.rows() << " exceeds cap " << tol::kGeneralEigMaxDim;
    throw DomainError(msg.str());
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "general_eig: QR iteration did not converge for dimension " << m.rows();
    throw NumericalError(msg.str());
  }
  return solver.eigenvalues();
}

} // namespace overdamp::num
