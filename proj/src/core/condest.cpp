#include "condest.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <random>

namespace efh {

namespace {

double dense_condition(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd sigma;
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        sigma = es.eigenvalues().cwiseAbs();
    } else if (n <= 512) {
        sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    } else {
        sigma = Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
    }
    const double smax = sigma.maxCoeff();
    const double smin = sigma.minCoeff();
    if (smin <= smax * std::numeric_limits<double>::epsilon() * n)
        return std::numeric_limits<double>::infinity();
    return smax / smin;
}

double power_norm(const LinearOp& apply, int n, int iterations, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
    v.normalize();
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXd w = apply(v);
        estimate = w.norm();
        if (!(estimate > 0.0) || !std::isfinite(estimate))
            return std::numeric_limits<double>::infinity();
        v = w / estimate;
    }
    return estimate;
}

} // namespace

double condition_estimate(const LinearOp& apply, const LinearOp& apply_inverse, int n,
                          unsigned long long seed) {
    if (n <= 4096) {
        Eigen::MatrixXd m(n, n);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < n; ++j) {
            e(j) = 1.0;
            m.col(j) = apply(e);
            e(j) = 0.0;
        }
        return dense_condition(m);
    }
    std::mt19937_64 rng(seed);
    const double smax = power_norm(apply, n, 50, rng);
    const double inv_smin = power_norm(apply_inverse, n, 50, rng);
    if (!std::isfinite(smax) || !std::isfinite(inv_smin))
        return std::numeric_limits<double>::infinity();
    return smax * inv_smin;
}

double condition_estimate(const Eigen::MatrixXd& m) { return dense_condition(m); }

} // namespace efh
