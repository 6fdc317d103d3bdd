#pragma once

#include <Eigen/Dense>
#include <functional>

namespace efh {

using LinearOp = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Condition number estimate sigma_max / sigma_min of an operator given both
/// its application and the application of its inverse.
///
/// For n <= 4096 the operator is materialized column by column and the exact
/// dense spectrum is used (symmetric eigenvalues when applicable, SVD
/// otherwise). Beyond that, 50 rounds of power iteration on M and M^{-1}
/// estimate the extreme singular values. Returns +inf for a singular operator.
double condition_estimate(const LinearOp& apply, const LinearOp& apply_inverse, int n,
                          unsigned long long seed = 12345);

/// Convenience overload for an explicit matrix.
double condition_estimate(const Eigen::MatrixXd& m);

} // namespace efh
