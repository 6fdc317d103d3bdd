#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/LU>
#include <cmath>
#include <numbers>

#include "core/efie.hpp"
#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "support.hpp"

using namespace efh;

TEST_CASE("green function values") {
    CHECK(green(1.0, 0.0).real() == doctest::Approx(1.0 / (4.0 * std::numbers::pi)));
    CHECK(green(1.0, 0.0).imag() == doctest::Approx(0.0));

    // Half wavelength: phase exactly -pi.
    const Complex g = green(0.5, 2.0 * std::numbers::pi);
    CHECK(std::abs(g) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
    CHECK(std::arg(g) == doctest::Approx(-std::numbers::pi).epsilon(1e-9));

    // Cross-check the phase against the series of the exponential.
    const double k = 3.1, r = 0.37;
    Complex series = 0.0;
    Complex term = 1.0;
    for (int n = 1; n <= 40; ++n) {
        series += term;
        term *= Complex(0.0, -k * r) / double(n);
    }
    const Complex expected = series / (4.0 * std::numbers::pi * r);
    CHECK(std::abs(green(r, k) - expected) < 1e-12);

    CHECK_THROWS_AS(green(0.0, 1.0), std::domain_error);
}

TEST_CASE("static triangle potentials match brute-force quadrature") {
    // Subdivision-based oracle: split the triangle 256 ways and sum centroids.
    const Vec3 a{0.1, 0.0, 0.0}, b{1.2, 0.1, 0.0}, c{0.3, 0.9, 0.0};
    auto brute = [&](const Vec3& obs, int depth) {
        double scalar = 0.0;
        Vec3 vec{};
        const int n = 1 << depth;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; i + j < n; ++j) {
                for (int half = 0; half < 2; ++half) {
                    if (half == 1 && i + j + 1 >= n) continue;
                    const double u = (i + (half ? 2.0 : 1.0) / 3.0) / n;
                    const double v = (j + (half ? 2.0 : 1.0) / 3.0) / n;
                    const Vec3 p = a + (b - a) * u + (c - a) * v;
                    const double area = 0.5 * (b - a).cross(c - a).norm() / (n * n);
                    const double r = (obs - p).norm();
                    scalar += area / r;
                    vec += (p - obs) * (area / r);
                }
            }
        }
        return std::make_pair(scalar, vec);
    };

    // Observation points off the plane: the oracle integrand is smooth and the
    // comparison can be tight.
    for (const Vec3 obs : {Vec3{0.5, 0.3, 0.4}, Vec3{2.0, -1.0, 0.1}, Vec3{0.55, 0.32, 0.05}}) {
        const StaticPotentials st = static_triangle_potentials(obs, a, b, c);
        const auto [scalar, vec] = brute(obs, 8);
        CHECK(st.scalar == doctest::Approx(scalar).epsilon(2e-4));
        const Vec3 analytic_vec = st.vector + st.projection * st.scalar - obs * st.scalar;
        CHECK((analytic_vec - vec).norm() < 2e-4 * vec.norm() + 5e-6);
    }

    // Observation inside the triangle plane (the self-term case): the centroid
    // oracle converges only linearly near the 1/R singularity, so compare
    // loosely against it and tightly against the h -> 0 limit of the formula.
    {
        const Vec3 obs{0.55, 0.32, 0.0};
        const StaticPotentials st = static_triangle_potentials(obs, a, b, c);
        const auto [scalar, vec] = brute(obs, 8);
        CHECK(st.scalar == doctest::Approx(scalar).epsilon(1e-2));
        const Vec3 analytic_vec = st.vector + st.projection * st.scalar - obs * st.scalar;
        CHECK((analytic_vec - vec).norm() < 1e-2 * vec.norm() + 1e-5);

        const StaticPotentials lifted =
            static_triangle_potentials(Vec3{0.55, 0.32, 1e-6}, a, b, c);
        CHECK(st.scalar == doctest::Approx(lifted.scalar).epsilon(1e-4));
        CHECK((st.vector - lifted.vector).norm() < 1e-4 * st.vector.norm() + 1e-8);
    }
}

TEST_CASE("impedance matrix is symmetric (reciprocity)") {
    const TriangleMesh mesh = generate_sphere(1.0, 1);
    const RwgBasisSet rwg = build_rwg(mesh);
    const BackgroundMedium medium;
    const Eigen::MatrixXcd z = assemble_impedance(mesh, rwg, medium, 300e6);
    const double scale = z.cwiseAbs().maxCoeff();
    const double asym = (z - z.transpose()).cwiseAbs().maxCoeff();
    CHECK(asym <= 1e-10 * scale);
}

TEST_CASE("excitation vector basics") {
    const TriangleMesh mesh = generate_sphere(1.0, 1);
    const RwgBasisSet rwg = build_rwg(mesh);
    PlaneWave wave;
    wave.frequency = 300e6;

    SUBCASE("zero amplitude gives a zero vector") {
        wave.amplitude = 0.0;
        CHECK(assemble_excitation(mesh, rwg, wave).norm() == 0.0);
    }
    SUBCASE("linearity: doubling the amplitude doubles every entry") {
        const Eigen::VectorXcd v1 = assemble_excitation(mesh, rwg, wave);
        wave.amplitude = 2.0;
        const Eigen::VectorXcd v2 = assemble_excitation(mesh, rwg, wave);
        CHECK((v2 - 2.0 * v1).cwiseAbs().maxCoeff() < 1e-14 * v1.cwiseAbs().maxCoeff());
    }
    SUBCASE("invalid wave is rejected") {
        wave.polarization = {0.0, 0.0, 1.0}; // parallel to propagation
        CHECK_THROWS_AS(assemble_excitation(mesh, rwg, wave), std::invalid_argument);
    }
}

TEST_CASE("excitation antisymmetry under the x -> -x mirror") {
    // The icosphere is symmetric under x -> -x up to a vertex permutation.
    // For the x-polarized wave the excitation must flip sign consistently
    // with the induced edge mapping.
    const TriangleMesh mesh = generate_sphere(1.0, 1);
    const RwgBasisSet rwg = build_rwg(mesh);

    TriangleMesh mirrored = mesh;
    for (auto& v : mirrored.vertices) v.x = -v.x;
    for (auto& t : mirrored.triangles) std::swap(t[1], t[2]); // restore orientation
    const RwgBasisSet mirrored_rwg = build_rwg(mirrored);

    PlaneWave wave;
    wave.frequency = 300e6;
    const Eigen::VectorXcd v = assemble_excitation(mesh, rwg, wave);
    const Eigen::VectorXcd vm = assemble_excitation(mirrored, mirrored_rwg, wave);

    // Brute-force matching of edges across the mirror by midpoint geometry.
    for (int e = 0; e < rwg.size(); ++e) {
        const Vec3 mid = (mesh.vertices[rwg.edges[e].vertex_a] +
                          mesh.vertices[rwg.edges[e].vertex_b]) *
                         0.5;
        const Vec3 target{-mid.x, mid.y, mid.z};
        int match = -1;
        for (int f = 0; f < mirrored_rwg.size(); ++f) {
            const Vec3 mmid = (mirrored.vertices[mirrored_rwg.edges[f].vertex_a] +
                               mirrored.vertices[mirrored_rwg.edges[f].vertex_b]) *
                              0.5;
            if ((mmid - target).norm() < 1e-12) {
                match = f;
                break;
            }
        }
        REQUIRE(match >= 0);
        CHECK(std::abs(std::abs(v(e)) - std::abs(vm(match))) <=
              1e-10 * v.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("realify block structure and the 1x1 analytic case") {
    // Z = j, V = 1: A = [[0,1],[1,0]], b = [1,0], solution x = [0,1] -> I = -j.
    ComplexSystem sys;
    sys.impedance = Eigen::MatrixXcd::Zero(1, 1);
    sys.impedance(0, 0) = Complex(0.0, 1.0);
    sys.excitation = Eigen::VectorXcd::Ones(1);
    const RealSystem real = realify(sys);
    CHECK(real.matrix(0, 0) == 0.0);
    CHECK(real.matrix(0, 1) == 1.0);
    CHECK(real.matrix(1, 0) == 1.0);
    CHECK(real.matrix(1, 1) == 0.0);
    CHECK(real.rhs(0) == 1.0);
    CHECK(real.rhs(1) == 0.0);

    const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(real.matrix).solve(real.rhs);
    const Eigen::VectorXcd current = complexify_solution(x, 1);
    CHECK(std::abs(current(0) - Complex(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(sys.impedance(0, 0) * current(0) - sys.excitation(0)) < 1e-14);
}

TEST_CASE("real symmetric Z gives a block-diagonal A") {
    auto rng = testsupport::make_rng(7);
    Eigen::MatrixXd zr = testsupport::random_gaussian(4, 4, rng);
    zr = (zr + zr.transpose()).eval();
    ComplexSystem sys;
    sys.impedance = zr.cast<Complex>();
    sys.excitation = Eigen::VectorXcd::Ones(4);
    const RealSystem real = realify(sys);
    CHECK(real.matrix.topRightCorner(4, 4).cwiseAbs().maxCoeff() == 0.0);
    CHECK(real.matrix.bottomLeftCorner(4, 4).cwiseAbs().maxCoeff() == 0.0);
    CHECK((real.matrix.bottomRightCorner(4, 4) + zr).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("realify/complexify round-trip leaves a tiny residual") {
    auto rng = testsupport::make_rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexSystem sys;
        sys.impedance = testsupport::random_complex_symmetric(4, rng);
        sys.excitation = testsupport::random_vector(4, rng).cast<Complex>() +
                         Complex(0, 1) * testsupport::random_vector(4, rng).cast<Complex>();
        const RealSystem real = realify(sys);
        const Eigen::VectorXd x =
            Eigen::PartialPivLU<Eigen::MatrixXd>(real.matrix).solve(real.rhs);
        const Eigen::VectorXcd current = complexify_solution(x, 4);
        const double residual = (sys.impedance * current - sys.excitation).norm() /
                                sys.excitation.norm();
        CHECK(residual <= 1e-12);
    }
}

TEST_CASE("complexify edge cases") {
    Eigen::VectorXd x(2);
    x << 0.0, 1.0;
    CHECK(std::abs(complexify_solution(x, 1)(0) - Complex(0.0, -1.0)) < 1e-15);
    x << 1.0, 0.0;
    CHECK(std::abs(complexify_solution(x, 1)(0) - Complex(1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(complexify_solution(x, 3), std::invalid_argument);
}

TEST_CASE("asymmetric impedance is rejected by realify") {
    ComplexSystem sys;
    sys.impedance = Eigen::MatrixXcd::Zero(2, 2);
    sys.impedance(0, 1) = 1.0;
    sys.excitation = Eigen::VectorXcd::Ones(2);
    CHECK_THROWS_AS(realify(sys), NumericError);
}

TEST_CASE("quadrature order refinement changes Z less on finer meshes") {
    const BackgroundMedium medium;
    double previous = 1e30;
    for (int level = 0; level <= 1; ++level) {
        const TriangleMesh mesh = generate_sphere(1.0, level);
        const RwgBasisSet rwg = build_rwg(mesh);
        const Eigen::MatrixXcd z3 =
            assemble_impedance(mesh, rwg, medium, 300e6, AssemblyOptions{3, 7});
        const Eigen::MatrixXcd z7 =
            assemble_impedance(mesh, rwg, medium, 300e6, AssemblyOptions{7, 7});
        const double rel = (z7 - z3).norm() / z7.norm();
        CHECK(rel < previous);
        previous = rel;
    }
}

TEST_CASE("realified eigenvalues come in +/- pairs") {
    // Holds for any A = [[X,Y],[Y,-X]] with symmetric X, Y: if (u,w) is an
    // eigenvector for lambda then (w,-u) is one for -lambda.
    auto rng = testsupport::make_rng(23);
    ComplexSystem sys;
    sys.impedance = testsupport::random_complex_symmetric(6, rng);
    sys.excitation = Eigen::VectorXcd::Ones(6);
    const RealSystem real = realify(sys);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real.matrix, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    const int n = static_cast<int>(ev.size());
    for (int i = 0; i < n / 2; ++i)
        CHECK(ev(i) == doctest::Approx(-ev(n - 1 - i)).epsilon(1e-10));
}
