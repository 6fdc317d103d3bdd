#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/LU>
#include <cmath>
#include <numbers>

#include "core/efie.hpp"
#include "core/farfield.hpp"
#include "support.hpp"

using namespace efh;

namespace {

double frequency_for_ka(double ka, double radius, const BackgroundMedium& medium) {
    return ka * medium.wave_speed() / (2.0 * std::numbers::pi * radius);
}

} // namespace

TEST_CASE("mie series: truncation self-convergence at ka = 6.3") {
    const BackgroundMedium medium;
    const double f = 300e6; // r = 1 m -> ka ~ 6.29
    for (double theta : {0.0, 30.0, 90.0, 147.0, 180.0}) {
        const double base = mie_rcs(1.0, medium, f, theta, 0);
        const double more = mie_rcs(1.0, medium, f, theta, 5);
        CHECK(std::abs(base - more) <= 1e-8 * std::abs(more));
    }
}

TEST_CASE("mie series: Rayleigh fourth-power scaling") {
    const BackgroundMedium medium;
    const double r = 1.0;
    const double s1 = mie_rcs(r, medium, frequency_for_ka(0.05, r, medium), 0.0);
    const double s2 = mie_rcs(r, medium, frequency_for_ka(0.10, r, medium), 0.0);
    CHECK(s2 / s1 == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("mie series: geometric-optics backscatter limit at ka = 20") {
    const BackgroundMedium medium;
    const double r = 1.0;
    const double sigma = mie_rcs(r, medium, frequency_for_ka(20.0, r, medium), 0.0);
    CHECK(sigma / (std::numbers::pi * r * r) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("mie series: forward scatter exceeds backscatter for ka > 3") {
    const BackgroundMedium medium;
    for (double ka : {3.5, 6.29, 12.0}) {
        const double f = frequency_for_ka(ka, 1.0, medium);
        CHECK(mie_rcs(1.0, medium, f, 180.0) > mie_rcs(1.0, medium, f, 0.0));
    }
}

TEST_CASE("radiated rcs: zero currents and quadratic scaling") {
    const TriangleMesh mesh = generate_sphere(1.0, 1);
    const RwgBasisSet rwg = build_rwg(mesh);
    const BackgroundMedium medium;

    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(rwg.size());
    CHECK(radiated_rcs(zero, mesh, rwg, medium, 300e6, 37.0, 0.0) == 0.0);

    auto rng = testsupport::make_rng(3);
    Eigen::VectorXcd currents = testsupport::random_vector(rwg.size(), rng).cast<Complex>() +
                                Complex(0, 1) *
                                    testsupport::random_vector(rwg.size(), rng).cast<Complex>();
    const Complex c(1.7, -0.4);
    const double s1 = radiated_rcs(currents, mesh, rwg, medium, 300e6, 64.0, 0.0);
    const double s2 = radiated_rcs((c * currents).eval(), mesh, rwg, medium, 300e6, 64.0, 0.0);
    CHECK(s2 == doctest::Approx(std::norm(c) * s1).epsilon(1e-12));
}

TEST_CASE("direct MoM solve matches the Mie reference on the level-2 sphere") {
    const TriangleMesh mesh = generate_sphere(1.0, 2);
    const RwgBasisSet rwg = build_rwg(mesh);
    const BackgroundMedium medium;
    const double f = 300e6;

    const Eigen::MatrixXcd z = assemble_impedance(mesh, rwg, medium, f);
    PlaneWave wave;
    wave.frequency = f;
    const Eigen::VectorXcd v = assemble_excitation(mesh, rwg, wave);
    const Eigen::VectorXcd currents = Eigen::PartialPivLU<Eigen::MatrixXcd>(z).solve(v);

    const RcsSweep test = rcs_sweep(currents, mesh, rwg, medium, f);
    const RcsSweep reference = mie_sweep(1.0, medium, f);
    const double delta = rcs_relative_error(test, reference);
    CHECK(delta <= 0.05);
    MESSAGE("level-2 delta_rcs vs mie = ", delta);
}

TEST_CASE("rcs relative error: exact values and oracle duplication") {
    const BackgroundMedium medium;
    RcsSweep ref = mie_sweep(1.0, medium, 300e6, 5.0);

    SUBCASE("identical sweeps give zero") { CHECK(rcs_relative_error(ref, ref) == 0.0); }

    SUBCASE("uniform scaling by 1.01 gives exactly 0.01") {
        RcsSweep test = ref;
        for (auto& s : test.sigma_m2) s *= 1.01;
        CHECK(rcs_relative_error(test, ref) == doctest::Approx(0.01).epsilon(1e-12));
    }

    SUBCASE("duplicate the metric with an independent loop") {
        RcsSweep test = ref;
        auto rng = testsupport::make_rng(5);
        std::uniform_real_distribution<double> u(0.9, 1.1);
        for (auto& s : test.sigma_m2) s *= u(rng);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ref.sigma_m2.size(); ++i) {
            num += (test.sigma_m2[i] - ref.sigma_m2[i]) * (test.sigma_m2[i] - ref.sigma_m2[i]);
            den += ref.sigma_m2[i] * ref.sigma_m2[i];
        }
        CHECK(rcs_relative_error(test, ref) == doctest::Approx(std::sqrt(num / den)));
    }

    SUBCASE("grid mismatch is rejected") {
        RcsSweep test = mie_sweep(1.0, medium, 300e6, 10.0);
        CHECK_THROWS_AS(rcs_relative_error(test, ref), std::invalid_argument);
    }

    SUBCASE("zero reference norm is rejected") {
        RcsSweep test = ref, zero = ref;
        for (auto& s : zero.sigma_m2) s = 0.0;
        CHECK_THROWS_AS(rcs_relative_error(test, zero), std::invalid_argument);
    }
}

TEST_CASE("surface current samples cover every triangle") {
    const TriangleMesh mesh = generate_sphere(1.0, 1);
    const RwgBasisSet rwg = build_rwg(mesh);
    auto rng = testsupport::make_rng(9);
    const Eigen::VectorXcd currents =
        testsupport::random_vector(rwg.size(), rng).cast<Complex>();
    const auto samples = surface_currents(currents, mesh, rwg);
    REQUIRE(static_cast<int>(samples.size()) == mesh.triangle_count());
    for (const auto& s : samples) {
        CHECK(s.magnitude >= 0.0);
        CHECK(s.centroid.norm() == doctest::Approx(mesh.triangle_centroid(0).norm()).epsilon(0.2));
    }
}
