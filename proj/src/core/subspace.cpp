#include "subspace.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace efh {

SubspaceSystem build_subspace(const LinearOp& apply, const Eigen::VectorXd& residual, int dim) {
    const int n = static_cast<int>(residual.size());
    if (dim < 1 || dim > n) throw std::invalid_argument("build_subspace: invalid dimension");
    const double alpha = residual.norm();
    if (alpha <= 0.0) throw std::invalid_argument("build_subspace: zero residual");

    Eigen::MatrixXd v(n, dim);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    v.col(0) = residual / alpha;

    int achieved = dim;
    for (int j = 0; j < dim; ++j) {
        Eigen::VectorXd w = apply(v.col(j));
        const double w_norm_in = w.norm();

        for (int i = 0; i <= j; ++i) { // modified Gram-Schmidt
            const double hij = v.col(i).dot(w);
            h(i, j) = hij;
            w -= hij * v.col(i);
        }
        // Reorthogonalize once if orthogonality degraded; corrections fold
        // into h so that C stays equal to U^T A U.
        Eigen::VectorXd g = v.leftCols(j + 1).transpose() * w;
        if (g.lpNorm<Eigen::Infinity>() > 1e-8) {
            w -= v.leftCols(j + 1) * g;
            h.col(j).head(j + 1) += g;
        }

        const double hnext = w.norm();
        if (j + 1 < dim) {
            if (hnext < 1e-13 * std::max(1.0, w_norm_in)) {
                achieved = j + 1; // breakdown: the Krylov space is exhausted
                break;
            }
            h(j + 1, j) = hnext;
            v.col(j + 1) = w / hnext;
        }
    }

    SubspaceSystem s;
    s.requested_dim = dim;
    s.achieved_dim = achieved;
    s.projected = h.topLeftCorner(achieved, achieved);
    s.prolongation = v.leftCols(achieved);
    s.residual_norm = alpha;
    s.rhs = Eigen::VectorXd::Zero(achieved);
    s.rhs(0) = alpha;
    return s;
}

double recover_scale(const Eigen::MatrixXd& projected, const Eigen::VectorXd& f,
                     const Eigen::VectorXd& unit_direction) {
    if (std::abs(unit_direction.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("recover_scale: direction must be unit length");
    const Eigen::VectorXd cz = projected * unit_direction;
    const double denom = cz.squaredNorm();
    if (denom < 1e-28)
        throw NumericError("recover_scale: direction annihilated by the projected matrix");
    return cz.dot(f) / denom;
}

} // namespace efh
