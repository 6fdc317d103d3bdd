#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "core/errors.hpp"
#include "core/mesh.hpp"
#include "support.hpp"

using namespace efh;

namespace {

const char* kTetrahedron =
    "# regular tetrahedron\n"
    "v 1 1 1\n"
    "v 1 -1 -1\n"
    "v -1 1 -1\n"
    "v -1 -1 1\n"
    "f 1 2 3\n"
    "f 1 4 2\n"
    "f 1 3 4\n"
    "f 2 4 3\n";

double signed_volume(const TriangleMesh& m) {
    double v = 0.0;
    for (int t = 0; t < m.triangle_count(); ++t)
        v += m.triangle_vertex(t, 0).dot(m.triangle_vertex(t, 1).cross(m.triangle_vertex(t, 2))) /
             6.0;
    return v;
}

} // namespace

TEST_CASE("tetrahedron file loads and is closed") {
    testsupport::TempDir dir("mesh");
    testsupport::write_file(dir.file("tet.txt"), kTetrahedron);
    const TriangleMesh mesh = load_mesh(dir.file("tet.txt"));
    CHECK(mesh.vertex_count() == 4);
    CHECK(mesh.triangle_count() == 4);
    CHECK(mesh.edge_count() == 6);
    CHECK(mesh.vertex_count() - mesh.edge_count() + mesh.triangle_count() == 2);
    CHECK(signed_volume(mesh) > 0.0); // outward orientation
}

TEST_CASE("non-manifold edge is rejected with the offending edge named") {
    testsupport::TempDir dir("mesh");
    testsupport::write_file(dir.file("bad.txt"),
                            "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1 1 1\n"
                            "f 1 2 3\nf 1 2 4\nf 2 1 5\n");
    CHECK_THROWS_WITH_AS(load_mesh(dir.file("bad.txt")),
                         doctest::Contains("edge (0,1)"), MeshError);
}

TEST_CASE("parse failures are reported with line numbers") {
    testsupport::TempDir dir("mesh");
    testsupport::write_file(dir.file("garbled.txt"), "v 0 0 0\nv 1 0\n");
    CHECK_THROWS_AS(load_mesh(dir.file("garbled.txt")), MeshError);
    CHECK_THROWS_AS(load_mesh(dir.file("missing.txt")), IoError);
}

TEST_CASE("degenerate triangles are rejected") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 0, 1}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("degenerate"), MeshError);
}

TEST_CASE("icosphere counts and Euler relation") {
    const TriangleMesh ico = generate_sphere(1.0, 0);
    CHECK(ico.vertex_count() == 12);
    CHECK(ico.triangle_count() == 20);
    CHECK(ico.edge_count() == 30);
    CHECK(ico.vertex_count() - ico.edge_count() + ico.triangle_count() == 2);
    CHECK(signed_volume(ico) > 0.0);

    const TriangleMesh l2 = generate_sphere(1.0, 2);
    CHECK(l2.triangle_count() == 320);
    CHECK(l2.vertex_count() == 162);
    CHECK(build_rwg(l2).size() == 480);
}

TEST_CASE("icosphere chord error shrinks below 2% of radius at level 2") {
    const double radius = 0.25;
    const TriangleMesh m = generate_sphere(radius, 2);
    double worst = 0.0;
    for (int t = 0; t < m.triangle_count(); ++t)
        worst = std::max(worst, std::abs(m.triangle_centroid(t).norm() - radius));
    CHECK(worst < 0.02 * radius);
}

TEST_CASE("icosphere area matches the sphere and facets converge to it") {
    const double exact = 4.0 * std::numbers::pi;
    double previous_chord = 1e30;
    for (int level = 0; level <= 3; ++level) {
        const TriangleMesh m = generate_sphere(1.0, level);
        CHECK(std::abs(m.total_area() - exact) / exact < 1e-12); // area-calibrated
        double chord = 0.0;
        for (int t = 0; t < m.triangle_count(); ++t)
            chord = std::max(chord, std::abs(m.triangle_centroid(t).norm() - 1.0));
        CHECK(chord < previous_chord);
        previous_chord = chord;
        if (level == 2) CHECK(chord < 0.02);
    }
}

TEST_CASE("uv sphere reproduces the reference discretization counts") {
    const TriangleMesh m = generate_sphere_uv(1.0, 71, 21);
    CHECK(m.triangle_count() == 2982);
    CHECK(m.vertex_count() == 1493);
    CHECK(build_rwg(m).size() == 4473);
    CHECK(signed_volume(m) > 0.0);
}

TEST_CASE("rwg bookkeeping: counts, ordering, pair structure") {
    const TriangleMesh mesh = generate_sphere(0.5, 1);
    const RwgBasisSet rwg = build_rwg(mesh);
    CHECK(rwg.size() == 3 * mesh.triangle_count() / 2);

    for (int e = 0; e < rwg.size(); ++e) {
        const RwgEdge& edge = rwg.edges[e];
        CHECK(edge.vertex_a < edge.vertex_b);
        CHECK(edge.tri_plus < edge.tri_minus);
        if (e > 0) {
            const RwgEdge& prev = rwg.edges[e - 1];
            CHECK((prev.vertex_a < edge.vertex_a ||
                   (prev.vertex_a == edge.vertex_a && prev.vertex_b < edge.vertex_b)));
        }
        // Plus/minus triangles are distinct and share exactly the endpoints.
        std::set<int> shared;
        for (int c = 0; c < 3; ++c)
            for (int d = 0; d < 3; ++d)
                if (mesh.triangles[edge.tri_plus][c] == mesh.triangles[edge.tri_minus][d])
                    shared.insert(mesh.triangles[edge.tri_plus][c]);
        CHECK(shared == std::set<int>{edge.vertex_a, edge.vertex_b});
        CHECK(edge.length ==
              doctest::Approx((mesh.vertices[edge.vertex_b] - mesh.vertices[edge.vertex_a]).norm()));
    }
}

TEST_CASE("mesh save/load round-trip is deterministic") {
    testsupport::TempDir dir("mesh");
    const TriangleMesh m = generate_sphere(1.0, 1);
    save_mesh(m, dir.file("s.txt"));
    const TriangleMesh a = load_mesh(dir.file("s.txt"));
    const TriangleMesh b = load_mesh(dir.file("s.txt"));
    const RwgBasisSet ra = build_rwg(a);
    const RwgBasisSet rb = build_rwg(b);
    REQUIRE(ra.size() == rb.size());
    for (int e = 0; e < ra.size(); ++e) {
        CHECK(ra.edges[e].vertex_a == rb.edges[e].vertex_a);
        CHECK(ra.edges[e].vertex_b == rb.edges[e].vertex_b);
        CHECK(ra.edges[e].tri_plus == rb.edges[e].tri_plus);
        CHECK(ra.edges[e].length == rb.edges[e].length);
    }
}
