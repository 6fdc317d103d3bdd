#include "qalgo.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace efh {

std::pair<Eigen::MatrixXd, Eigen::VectorXd> hermitian_dilation(const Eigen::MatrixXd& matrix,
                                                               const Eigen::VectorXd& rhs) {
    const int n = static_cast<int>(matrix.rows());
    if (matrix.cols() != n) throw std::invalid_argument("hermitian_dilation: matrix must be square");
    if (rhs.size() != n) throw std::invalid_argument("hermitian_dilation: rhs size mismatch");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    h.topRightCorner(n, n) = matrix;
    h.bottomLeftCorner(n, n) = matrix.transpose();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * n);
    g.head(n) = rhs;
    return {std::move(h), std::move(g)};
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> pad_pow2(const Eigen::MatrixXd& matrix,
                                                     const Eigen::VectorXd& rhs) {
    const int n = static_cast<int>(matrix.rows());
    if (matrix.cols() != n) throw std::invalid_argument("pad_pow2: matrix must be square");
    int padded = 1;
    while (padded < n) padded *= 2;
    if (padded == n) return {matrix, rhs};
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(padded, padded);
    m.topLeftCorner(n, n) = matrix;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(padded);
    v.head(n) = rhs;
    return {std::move(m), std::move(v)};
}

int qubits_for_dimension(int dim) {
    if (dim < 2) return 1;
    int q = 0;
    while ((1 << q) < dim) ++q;
    return q;
}

Eigen::VectorXd extract_classical(const StateVector& state, int dim, double* imag_residue) {
    if (dim < 1 || static_cast<std::size_t>(dim) > state.dimension())
        throw std::invalid_argument("extract_classical: dim out of range");
    Eigen::VectorXd v(dim);
    double real_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
        v(i) = state.amplitude(i).real();
        real_sq += v(i) * v(i);
    }
    if (imag_residue) *imag_residue = std::sqrt(std::max(0.0, 1.0 - real_sq));
    if (real_sq < 1e-24)
        throw NumericError("extract_classical: truncated real part has zero norm");
    return v / std::sqrt(real_sq);
}

} // namespace efh
