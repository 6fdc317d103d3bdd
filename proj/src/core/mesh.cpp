#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace efh {

namespace {

constexpr double kMinTriangleArea = 1e-12; // m^2

std::pair<int, int> undirected(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Faceting makes a vertex-projected sphere mesh enclose less area than the
// sphere it stands for, which biases scattering observables by the effective
// radius deficit. Scale radially so the faceted area equals 4 pi r^2.
void calibrate_sphere_area(TriangleMesh& m, double radius) {
    const double scale = std::sqrt(4.0 * std::numbers::pi * radius * radius / m.total_area());
    for (auto& v : m.vertices) v = v * scale;
}

} // namespace

double TriangleMesh::triangle_area(int tri) const {
    const Vec3 a = triangle_vertex(tri, 0);
    const Vec3 b = triangle_vertex(tri, 1);
    const Vec3 c = triangle_vertex(tri, 2);
    return 0.5 * (b - a).cross(c - a).norm();
}

Vec3 TriangleMesh::triangle_centroid(int tri) const {
    return (triangle_vertex(tri, 0) + triangle_vertex(tri, 1) + triangle_vertex(tri, 2)) / 3.0;
}

Vec3 TriangleMesh::triangle_normal(int tri) const {
    const Vec3 a = triangle_vertex(tri, 0);
    const Vec3 b = triangle_vertex(tri, 1);
    const Vec3 c = triangle_vertex(tri, 2);
    return (b - a).cross(c - a).normalized();
}

double TriangleMesh::total_area() const {
    double s = 0.0;
    for (int t = 0; t < triangle_count(); ++t) s += triangle_area(t);
    return s;
}

int TriangleMesh::edge_count() const {
    std::map<std::pair<int, int>, int> seen;
    for (const auto& t : triangles)
        for (int c = 0; c < 3; ++c) ++seen[undirected(t[c], t[(c + 1) % 3])];
    return static_cast<int>(seen.size());
}

void TriangleMesh::validate() const {
    const int nv = vertex_count();
    for (int t = 0; t < triangle_count(); ++t) {
        const auto& tri = triangles[t];
        for (int c = 0; c < 3; ++c) {
            if (tri[c] < 0 || tri[c] >= nv)
                throw MeshError("triangle " + std::to_string(t) + " references vertex " +
                                std::to_string(tri[c]) + " out of range");
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw MeshError("triangle " + std::to_string(t) + " repeats a vertex");
        if (triangle_area(t) <= kMinTriangleArea)
            throw MeshError("triangle " + std::to_string(t) + " is degenerate (area " +
                            std::to_string(triangle_area(t)) + " m^2)");
    }

    // Closed orientable manifold: each undirected edge must be traversed once
    // in each direction by exactly two triangles.
    std::map<std::pair<int, int>, std::pair<int, int>> edge_use; // -> {forward, backward} counts
    for (const auto& tri : triangles) {
        for (int c = 0; c < 3; ++c) {
            const int a = tri[c], b = tri[(c + 1) % 3];
            auto& use = edge_use[undirected(a, b)];
            if (a < b)
                ++use.first;
            else
                ++use.second;
        }
    }
    for (const auto& [edge, use] : edge_use) {
        const int total = use.first + use.second;
        if (total != 2)
            throw MeshError("edge (" + std::to_string(edge.first) + "," +
                            std::to_string(edge.second) + ") used by " + std::to_string(total) +
                            " triangles; surface is not a closed manifold");
        if (use.first != 1 || use.second != 1)
            throw MeshError("edge (" + std::to_string(edge.first) + "," +
                            std::to_string(edge.second) +
                            ") traversed twice in the same direction; orientation is inconsistent");
    }
}

TriangleMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file: " + path);

    TriangleMesh mesh;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z))
                throw MeshError(path + ":" + std::to_string(lineno) + ": malformed vertex line");
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            int i, j, k;
            if (!(ls >> i >> j >> k))
                throw MeshError(path + ":" + std::to_string(lineno) + ": malformed face line");
            mesh.triangles.push_back({i - 1, j - 1, k - 1}); // file is 1-based
        } else {
            throw MeshError(path + ":" + std::to_string(lineno) + ": unknown record '" + tag + "'");
        }
    }
    mesh.validate();
    return mesh;
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write mesh file: " + path);
    out.precision(17);
    for (const auto& v : mesh.vertices) out << "v " << v.x << " " << v.y << " " << v.z << "\n";
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
}

namespace {

TriangleMesh icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleMesh m;
    m.vertices = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
    };
    m.triangles = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };
    return m;
}

} // namespace

TriangleMesh generate_sphere(double radius, int subdivision_level) {
    if (radius <= 0.0) throw MeshError("sphere radius must be positive");
    if (subdivision_level < 0) throw MeshError("subdivision level must be >= 0");

    TriangleMesh m = icosahedron();
    for (auto& v : m.vertices) v = v.normalized() * radius;
    for (int level = 0; level < subdivision_level; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = undirected(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const int idx = m.vertex_count();
            m.vertices.push_back(((m.vertices[a] + m.vertices[b]) * 0.5).normalized() * radius);
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(m.triangles.size() * 4);
        for (const auto& t : m.triangles) {
            const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.triangles = std::move(next);
    }
    calibrate_sphere_area(m, radius);
    m.validate();
    return m;
}

TriangleMesh generate_sphere_uv(double radius, int meridians, int rings) {
    if (radius <= 0.0) throw MeshError("sphere radius must be positive");
    if (meridians < 3 || rings < 1) throw MeshError("uv sphere needs >= 3 meridians and >= 1 ring");

    TriangleMesh m;
    m.vertices.push_back({0, 0, radius}); // north pole
    for (int i = 1; i <= rings; ++i) {
        const double theta = std::numbers::pi * i / (rings + 1);
        for (int j = 0; j < meridians; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / meridians;
            m.vertices.push_back({radius * std::sin(theta) * std::cos(phi),
                                  radius * std::sin(theta) * std::sin(phi),
                                  radius * std::cos(theta)});
        }
    }
    m.vertices.push_back({0, 0, -radius}); // south pole
    const int south = m.vertex_count() - 1;
    auto ring_vertex = [&](int ring, int j) { return 1 + ring * meridians + (j % meridians); };

    for (int j = 0; j < meridians; ++j) // north cap, CCW from outside
        m.triangles.push_back({0, ring_vertex(0, j), ring_vertex(0, j + 1)});
    for (int i = 0; i + 1 < rings; ++i) {
        for (int j = 0; j < meridians; ++j) {
            const int a = ring_vertex(i, j), b = ring_vertex(i, j + 1);
            const int c = ring_vertex(i + 1, j), d = ring_vertex(i + 1, j + 1);
            m.triangles.push_back({a, c, d});
            m.triangles.push_back({a, d, b});
        }
    }
    for (int j = 0; j < meridians; ++j)
        m.triangles.push_back({south, ring_vertex(rings - 1, j + 1), ring_vertex(rings - 1, j)});
    calibrate_sphere_area(m, radius);
    m.validate();
    return m;
}

RwgBasisSet build_rwg(const TriangleMesh& mesh) {
    mesh.validate();

    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (int t = 0; t < mesh.triangle_count(); ++t)
        for (int c = 0; c < 3; ++c)
            edge_tris[undirected(mesh.triangles[t][c], mesh.triangles[t][(c + 1) % 3])].push_back(t);

    auto free_vertex = [&](int tri, int va, int vb) {
        for (int c = 0; c < 3; ++c) {
            const int v = mesh.triangles[tri][c];
            if (v != va && v != vb) return v;
        }
        throw MeshError("triangle " + std::to_string(tri) + " does not contain the shared edge");
    };

    RwgBasisSet basis;
    basis.edges.reserve(edge_tris.size());
    for (const auto& [edge, tris] : edge_tris) { // std::map iterates in sorted edge order
        RwgEdge e;
        e.vertex_a = edge.first;
        e.vertex_b = edge.second;
        e.length = (mesh.vertices[edge.second] - mesh.vertices[edge.first]).norm();
        e.tri_plus = std::min(tris[0], tris[1]);
        e.tri_minus = std::max(tris[0], tris[1]);
        e.free_vertex_plus = free_vertex(e.tri_plus, edge.first, edge.second);
        e.free_vertex_minus = free_vertex(e.tri_minus, edge.first, edge.second);
        e.area_plus = mesh.triangle_area(e.tri_plus);
        e.area_minus = mesh.triangle_area(e.tri_minus);
        basis.edges.push_back(e);
    }
    return basis;
}

} // namespace efh
