#include "ilut.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace efh {

Eigen::VectorXd IluFactors::solve(const Eigen::VectorXd& v) const {
    Eigen::VectorXd y = v;
    for (int i = 0; i < n; ++i) // forward: L y = v, unit diagonal
        for (const auto& e : lower[i]) y(i) -= e.value * y(e.col);
    for (int i = n - 1; i >= 0; --i) { // backward: U x = y
        double diag = 0.0;
        for (const auto& e : upper[i]) {
            if (e.col == i)
                diag = e.value;
            else
                y(i) -= e.value * y(e.col);
        }
        y(i) /= diag;
    }
    return y;
}

Eigen::VectorXd IluFactors::multiply(const Eigen::VectorXd& v) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (const auto& e : upper[i]) u(i) += e.value * v(e.col);
    Eigen::VectorXd out = u;
    for (int i = 0; i < n; ++i)
        for (const auto& e : lower[i]) out(i) += e.value * u(e.col);
    return out;
}

Eigen::MatrixXd IluFactors::dense_product() const {
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (const auto& e : lower[i]) l(i, e.col) = e.value;
        for (const auto& e : upper[i]) u(i, e.col) = e.value;
    }
    return l * u;
}

IluFactors ilut(const Eigen::MatrixXd& matrix, double tau, int max_fill) {
    const int n = static_cast<int>(matrix.rows());
    if (n != matrix.cols()) throw std::invalid_argument("ilut: matrix must be square");
    if (tau < 0.0) throw std::invalid_argument("ilut: drop tolerance must be >= 0");

    IluFactors f;
    f.n = n;
    f.drop_tolerance = tau;
    f.lower.resize(n);
    f.upper.resize(n);

    std::vector<double> w(n);
    std::vector<IluFactors::Entry> keep;
    for (int i = 0; i < n; ++i) {
        const double row_norm = matrix.row(i).norm();
        if (row_norm == 0.0)
            throw NumericError("ilut: structurally singular, zero row " + std::to_string(i));
        const double drop = tau * row_norm;

        for (int j = 0; j < n; ++j) w[j] = matrix(i, j);

        // Eliminate against previous pivot rows in increasing column order.
        for (int k = 0; k < i; ++k) {
            double wk = w[k];
            if (wk == 0.0) continue;
            double pivot = 0.0;
            for (const auto& e : f.upper[k])
                if (e.col == k) {
                    pivot = e.value;
                    break;
                }
            wk /= pivot;
            if (std::abs(wk) < drop) {
                w[k] = 0.0;
                continue;
            }
            w[k] = wk;
            for (const auto& e : f.upper[k])
                if (e.col != k) w[e.col] -= wk * e.value;
        }

        auto keep_largest = [&](int lo, int hi, int always_col, auto& dst) {
            keep.clear();
            for (int j = lo; j < hi; ++j) {
                if (j == always_col) continue;
                if (w[j] != 0.0 && std::abs(w[j]) >= drop) keep.push_back({j, w[j]});
            }
            if (static_cast<int>(keep.size()) > max_fill) {
                std::nth_element(keep.begin(), keep.begin() + max_fill, keep.end(),
                                 [](const auto& a, const auto& b) {
                                     return std::abs(a.value) > std::abs(b.value);
                                 });
                keep.resize(max_fill);
            }
            std::sort(keep.begin(), keep.end(),
                      [](const auto& a, const auto& b) { return a.col < b.col; });
            dst = keep;
        };

        keep_largest(0, i, -1, f.lower[i]);
        keep_largest(i, n, i, f.upper[i]);

        // Pivot guard: EFIE systems are well scaled, replacement is rare.
        double pivot = w[i];
        const double floor = 1e-14 * row_norm;
        if (std::abs(pivot) < floor) pivot = (pivot < 0.0 ? -floor : floor);
        f.upper[i].insert(f.upper[i].begin(), {i, pivot});

        f.fill_count += static_cast<long long>(f.lower[i].size() + f.upper[i].size());
    }
    return f;
}

} // namespace efh
