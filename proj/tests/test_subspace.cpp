#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/LU>
#include <cmath>

#include "core/errors.hpp"
#include "core/subspace.hpp"
#include "support.hpp"

using namespace efh;

namespace {

LinearOp matrix_op(const Eigen::MatrixXd& m) {
    return [m](const Eigen::VectorXd& v) -> Eigen::VectorXd { return m * v; };
}

} // namespace

TEST_CASE("identity operator breaks down to a one-dimensional subspace") {
    auto rng = testsupport::make_rng(3);
    const Eigen::VectorXd e = testsupport::random_vector(12, rng);
    const SubspaceSystem s = build_subspace(matrix_op(Eigen::MatrixXd::Identity(12, 12)), e, 4);
    CHECK(s.achieved_dim == 1);
    CHECK(s.projected(0, 0) == doctest::Approx(1.0));
    CHECK(s.rhs(0) == doctest::Approx(e.norm()));
    // y = alpha solves exactly; prolongation reproduces the solution e.
    const Eigen::VectorXd y = s.projected.lu().solve(s.rhs);
    CHECK((s.prolongation * y - e).norm() <= 1e-12 * e.norm());
}

TEST_CASE("full-dimension projection is exact") {
    auto rng = testsupport::make_rng(5);
    const Eigen::MatrixXd a = testsupport::random_spd(8, 0.5, 4.0, rng);
    const Eigen::VectorXd e = testsupport::random_vector(8, rng);
    const SubspaceSystem s = build_subspace(matrix_op(a), e, 8);
    REQUIRE(s.achieved_dim == 8);
    const Eigen::VectorXd y = s.projected.lu().solve(s.rhs);
    const Eigen::VectorXd direct = a.lu().solve(e);
    CHECK((s.prolongation * y - direct).norm() <= 1e-9 * direct.norm());
}

TEST_CASE("orthonormal columns and projection consistency") {
    auto rng = testsupport::make_rng(7);
    const Eigen::MatrixXd a = testsupport::random_gaussian(64, 64, rng);
    const Eigen::VectorXd e = testsupport::random_vector(64, rng);
    const SubspaceSystem s = build_subspace(matrix_op(a), e, 16);
    REQUIRE(s.achieved_dim == 16);

    const Eigen::MatrixXd gram =
        s.prolongation.transpose() * s.prolongation - Eigen::MatrixXd::Identity(16, 16);
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-10);

    const Eigen::MatrixXd projected_explicit =
        s.prolongation.transpose() * a * s.prolongation;
    const double scale = projected_explicit.cwiseAbs().maxCoeff();
    CHECK((projected_explicit - s.projected).cwiseAbs().maxCoeff() <= 1e-10 * scale);
}

TEST_CASE("Galerkin projection reduces the residual on a nonsymmetric system") {
    auto rng = testsupport::make_rng(9);
    const Eigen::MatrixXd a = testsupport::random_gaussian(64, 64, rng) +
                              10.0 * Eigen::MatrixXd::Identity(64, 64);
    const Eigen::VectorXd e = testsupport::random_vector(64, rng);
    const SubspaceSystem s = build_subspace(matrix_op(a), e, 16);
    const Eigen::VectorXd y = s.projected.lu().solve(s.rhs);
    CHECK((e - a * (s.prolongation * y)).norm() < e.norm());
}

TEST_CASE("subspace rhs is the scaled first basis vector") {
    auto rng = testsupport::make_rng(11);
    const Eigen::MatrixXd a = testsupport::random_spd(10, 1.0, 3.0, rng);
    const Eigen::VectorXd e = testsupport::random_vector(10, rng);
    const SubspaceSystem s = build_subspace(matrix_op(a), e, 4);
    CHECK(s.residual_norm == doctest::Approx(e.norm()));
    CHECK(s.rhs(0) == doctest::Approx(e.norm()));
    for (int i = 1; i < s.achieved_dim; ++i) CHECK(s.rhs(i) == 0.0);
    CHECK((s.prolongation.col(0) - e / e.norm()).norm() <= 1e-12);
}

TEST_CASE("invalid subspace requests are rejected") {
    auto rng = testsupport::make_rng(13);
    const Eigen::MatrixXd a = testsupport::random_spd(6, 1.0, 2.0, rng);
    CHECK_THROWS_AS(build_subspace(matrix_op(a), Eigen::VectorXd::Zero(6), 4),
                    std::invalid_argument);
    const Eigen::VectorXd e = testsupport::random_vector(6, rng);
    CHECK_THROWS_AS(build_subspace(matrix_op(a), e, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_subspace(matrix_op(a), e, 7), std::invalid_argument);
}

TEST_CASE("recover_scale: identity, sign, exactness, optimality") {
    auto rng = testsupport::make_rng(15);

    SUBCASE("identity matrix with aligned rhs") {
        Eigen::VectorXd zhat = Eigen::VectorXd::Zero(4);
        zhat(2) = 1.0;
        const Eigen::VectorXd f = 3.0 * zhat;
        CHECK(recover_scale(Eigen::MatrixXd::Identity(4, 4), f, zhat) == doctest::Approx(3.0));
        CHECK(recover_scale(Eigen::MatrixXd::Identity(4, 4), f, (-zhat).eval()) ==
              doctest::Approx(-3.0));
    }

    SUBCASE("exact direction gives zero residual") {
        const Eigen::MatrixXd c = testsupport::random_spd(6, 0.5, 2.0, rng);
        const Eigen::VectorXd f = testsupport::random_vector(6, rng);
        const Eigen::VectorXd z = c.lu().solve(f);
        const Eigen::VectorXd zhat = z / z.norm();
        const double alpha = recover_scale(c, f, zhat);
        CHECK((f - alpha * (c * zhat)).norm() <= 1e-12 * f.norm());
        CHECK(alpha == doctest::Approx(z.norm()));
    }

    SUBCASE("least-squares optimality against perturbed scales") {
        const Eigen::MatrixXd c = testsupport::random_gaussian(6, 6, rng);
        const Eigen::VectorXd f = testsupport::random_vector(6, rng);
        Eigen::VectorXd zhat = testsupport::random_vector(6, rng);
        zhat.normalize();
        const double alpha = recover_scale(c, f, zhat);
        const double best = (f - alpha * (c * zhat)).norm();
        for (double delta : {0.1 * alpha, -0.1 * alpha}) {
            CHECK(best <= (f - (alpha + delta) * (c * zhat)).norm());
        }
    }

    SUBCASE("annihilated direction and non-unit inputs are errors") {
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 3);
        c(0, 0) = 1.0;
        Eigen::VectorXd zhat = Eigen::VectorXd::Zero(3);
        zhat(2) = 1.0; // maps to zero
        const Eigen::VectorXd f = Eigen::VectorXd::Ones(3);
        CHECK_THROWS_AS(recover_scale(c, f, zhat), NumericError);
        CHECK_THROWS_AS(recover_scale(c, f, (2.0 * zhat).eval()), std::invalid_argument);
    }
}

TEST_CASE("reorthogonalization keeps orthonormality on an ill-conditioned operator") {
    auto rng = testsupport::make_rng(21);
    Eigen::VectorXd ev(48);
    for (int i = 0; i < 48; ++i) ev(i) = std::pow(10.0, -6.0 * i / 47.0); // kappa = 1e6
    const Eigen::MatrixXd a = testsupport::matrix_with_spectrum(ev, rng);
    const Eigen::VectorXd e = testsupport::random_vector(48, rng);
    const SubspaceSystem s = build_subspace(matrix_op(a), e, 32);
    const Eigen::MatrixXd gram = s.prolongation.transpose() * s.prolongation -
                                 Eigen::MatrixXd::Identity(s.achieved_dim, s.achieved_dim);
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-10);
}
