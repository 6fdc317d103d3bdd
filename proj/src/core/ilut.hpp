#pragma once

#include <Eigen/Dense>
#include <vector>

namespace efh {

/// Sparse row-wise incomplete LU factors with threshold dropping.
/// L has an implicit unit diagonal; U carries the pivots.
struct IluFactors {
    struct Entry {
        int col;
        double value;
    };
    int n = 0;
    double drop_tolerance = 0.0;
    std::vector<std::vector<Entry>> lower; ///< strictly lower, per row, column-sorted
    std::vector<std::vector<Entry>> upper; ///< upper including diagonal, per row, column-sorted
    long long fill_count = 0;              ///< stored entries across both factors

    /// U^{-1} (L^{-1} v) by forward/back substitution.
    Eigen::VectorXd solve(const Eigen::VectorXd& v) const;
    /// L (U v) using the sparse factors.
    Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;
    /// Dense product L*U, for small-scale verification.
    Eigen::MatrixXd dense_product() const;
};

/// Row-wise ILUT on a dense matrix with dual dropping: entries below
/// tau * (2-norm of the original row) are dropped during elimination, and at
/// most `max_fill` entries are kept per row in each of L and U (beyond the
/// diagonal). tau = 0 with max_fill >= n reproduces complete LU.
/// Tiny pivots |u_ii| < 1e-14 * row-norm are replaced by that bound, keeping
/// the sign; a zero row is a structural failure.
IluFactors ilut(const Eigen::MatrixXd& matrix, double tau, int max_fill = 64);

} // namespace efh
