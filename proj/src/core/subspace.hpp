#pragma once

#include <Eigen/Dense>

#include "condest.hpp"

namespace efh {

/// Projected small system C y = d with prolongation U, built by an Arnoldi
/// process from a residual. The Galerkin (FOM) projection makes C square, so
/// the quantum inner solvers can consume it directly.
struct SubspaceSystem {
    Eigen::MatrixXd projected;     ///< C, achieved_dim x achieved_dim
    Eigen::VectorXd rhs;           ///< d = alpha * e_1
    Eigen::MatrixXd prolongation;  ///< U, n x achieved_dim, orthonormal columns
    double residual_norm = 0.0;    ///< alpha = ||seed residual||
    int requested_dim = 0;
    int achieved_dim = 0; ///< < requested on Arnoldi breakdown
};

/// Arnoldi with modified Gram-Schmidt (one reorthogonalization pass when the
/// loss of orthogonality exceeds 1e-8) started from residual/||residual||.
/// C is the leading Hessenberg block U^T A U; d = ||residual|| e_1.
/// Breakdown (new vector norm < 1e-13) truncates to the achieved dimension.
SubspaceSystem build_subspace(const LinearOp& apply, const Eigen::VectorXd& residual, int dim);

/// Signed scale recovered from a unit direction by the minimum L2-norm
/// principle: argmin_a ||f - a C z|| = (C z)^T f / ||C z||^2. The sign of the
/// result also resolves the quantum global-sign ambiguity.
/// Throws NumericError when ||C z|| < 1e-14 (direction annihilated).
double recover_scale(const Eigen::MatrixXd& projected, const Eigen::VectorXd& f,
                     const Eigen::VectorXd& unit_direction);

} // namespace efh
