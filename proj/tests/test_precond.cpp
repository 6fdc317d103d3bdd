#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/LU>
#include <cmath>
#include <limits>

#include "core/condest.hpp"
#include "core/efie.hpp"
#include "core/errors.hpp"
#include "core/ilut.hpp"
#include "support.hpp"

using namespace efh;

TEST_CASE("ilut of the identity is the identity for any tau") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(8, 8);
    for (double tau : {0.0, 1e-3, 0.5}) {
        const IluFactors f = ilut(eye, tau);
        CHECK((f.dense_product() - eye).cwiseAbs().maxCoeff() == 0.0);
        for (int i = 0; i < 8; ++i) CHECK(f.lower[i].empty());
    }
}

TEST_CASE("ilut with tau = 0 reproduces complete LU on a dense 64x64") {
    auto rng = testsupport::make_rng(17);
    const Eigen::MatrixXd a =
        testsupport::random_gaussian(64, 64, rng) + 8.0 * Eigen::MatrixXd::Identity(64, 64);
    const IluFactors f = ilut(a, 0.0, 64);
    CHECK((f.dense_product() - a).cwiseAbs().maxCoeff() <= 1e-10 * a.cwiseAbs().maxCoeff());
}

TEST_CASE("apply: identity factors leave vectors unchanged") {
    const IluFactors f = ilut(Eigen::MatrixXd::Identity(6, 6), 1e-3);
    auto rng = testsupport::make_rng(1);
    const Eigen::VectorXd v = testsupport::random_vector(6, rng);
    CHECK((f.solve(v) - v).norm() == 0.0);
}

TEST_CASE("apply: complete-LU factors invert the matrix") {
    auto rng = testsupport::make_rng(29);
    const Eigen::MatrixXd a = testsupport::random_spd(24, 1.0, 5.0, rng);
    const IluFactors f = ilut(a, 0.0, 24);
    const Eigen::VectorXd v = testsupport::random_vector(24, rng);
    CHECK((a * f.solve(v) - v).norm() <= 1e-10 * v.norm());
}

TEST_CASE("apply is linear") {
    auto rng = testsupport::make_rng(31);
    const Eigen::MatrixXd a = testsupport::random_spd(16, 0.5, 4.0, rng);
    const IluFactors f = ilut(a, 1e-2);
    const Eigen::VectorXd u = testsupport::random_vector(16, rng);
    const Eigen::VectorXd v = testsupport::random_vector(16, rng);
    const double alpha = 1.3, beta = -0.7;
    const Eigen::VectorXd lhs = f.solve(alpha * u + beta * v);
    const Eigen::VectorXd rhs = alpha * f.solve(u) + beta * f.solve(v);
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <= 1e-12 * lhs.lpNorm<Eigen::Infinity>());
}

TEST_CASE("preconditioned Richardson iteration reduces the residual") {
    auto rng = testsupport::make_rng(37);
    const Eigen::MatrixXd a = testsupport::random_spd(16, 1.0, 20.0, rng);
    const Eigen::VectorXd b = testsupport::random_vector(16, rng);
    const IluFactors f = ilut(a, 1e-2);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(16);
    double residual = b.norm();
    for (int it = 0; it < 10; ++it) {
        x += f.solve(b - a * x);
        const double next = (b - a * x).norm();
        CHECK(next < residual);
        residual = next;
    }
}

TEST_CASE("ilut multiply agrees with the dense product") {
    auto rng = testsupport::make_rng(41);
    const Eigen::MatrixXd a = testsupport::random_spd(20, 0.5, 6.0, rng);
    const IluFactors f = ilut(a, 1e-2);
    const Eigen::VectorXd v = testsupport::random_vector(20, rng);
    CHECK((f.multiply(v) - f.dense_product() * v).norm() <= 1e-12 * v.norm());
}

TEST_CASE("zero row is a structural failure") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
    a.row(2).setZero();
    CHECK_THROWS_AS(ilut(a, 1e-3), NumericError);
}

TEST_CASE("ilut strongly improves the EFIE system condition number") {
    const TriangleMesh mesh = generate_sphere(1.0, 1);
    const RwgBasisSet rwg = build_rwg(mesh);
    const BackgroundMedium medium;
    ComplexSystem sys;
    sys.impedance = assemble_impedance(mesh, rwg, medium, 300e6);
    PlaneWave wave;
    wave.frequency = 300e6;
    sys.excitation = assemble_excitation(mesh, rwg, wave);
    const RealSystem real = realify(sys);

    const double kappa_plain = condition_estimate(real.matrix);
    const IluFactors f = ilut(real.matrix, 1e-3);
    Eigen::MatrixXd preconditioned(real.size(), real.size());
    for (int j = 0; j < real.size(); ++j) preconditioned.col(j) = f.solve(real.matrix.col(j));
    const double kappa_pre = condition_estimate(preconditioned);
    MESSAGE("kappa(A) = ", kappa_plain, ", kappa(P^-1 A) = ", kappa_pre);
    CHECK(kappa_pre < kappa_plain);
    CHECK(kappa_pre < 0.5 * kappa_plain);
}

TEST_CASE("condition estimate: exact small cases") {
    CHECK(condition_estimate(Eigen::MatrixXd::Identity(5, 5)) == doctest::Approx(1.0));
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 10.0;
    CHECK(condition_estimate(d) == doctest::Approx(10.0));
}

TEST_CASE("condition estimate recovers a constructed spectrum") {
    auto rng = testsupport::make_rng(43);
    Eigen::VectorXd sv(32);
    for (int i = 0; i < 32; ++i) sv(i) = i + 1.0;
    // Nonsymmetric matrix with prescribed singular values U S V^T.
    const Eigen::MatrixXd u = testsupport::random_orthogonal(32, rng);
    const Eigen::MatrixXd v = testsupport::random_orthogonal(32, rng);
    const Eigen::MatrixXd m = u * sv.asDiagonal() * v.transpose();
    CHECK(condition_estimate(m) == doctest::Approx(32.0).epsilon(0.10));
}

TEST_CASE("condition estimate flags singular operators") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    CHECK(std::isinf(condition_estimate(m)));
}

TEST_CASE("condition estimate: power-iteration path above the dense cutoff") {
    // Diagonal operator of size 5000 with known extreme values.
    const int n = 5000;
    Eigen::VectorXd d(n);
    auto rng = testsupport::make_rng(47);
    std::uniform_real_distribution<double> u(2.0, 9.0);
    for (int i = 0; i < n; ++i) d(i) = u(rng);
    d(123) = 1.0;
    d(4567) = 10.0;
    const LinearOp apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return d.asDiagonal() * x;
    };
    const LinearOp inverse = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return d.cwiseInverse().asDiagonal() * x;
    };
    const double kappa = condition_estimate(apply, inverse, n);
    CHECK(kappa == doctest::Approx(10.0).epsilon(0.15));
}
