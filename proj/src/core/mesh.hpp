#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vec3.hpp"

namespace efh {

/// Closed triangulated PEC surface. Triangles are counterclockwise when viewed
/// from outside, so cross(v1-v0, v2-v0) points outward.
///
/// Validation (validate(), run by every constructor path) enforces:
///   - vertex indices in range, no repeated vertex within a triangle
///   - every triangle area > 1e-12 m^2
///   - closed orientable manifold: each undirected edge appears in exactly two
///     triangles, traversed in opposite directions
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    /// Count of undirected edges.
    int edge_count() const;

    Vec3 triangle_vertex(int tri, int corner) const { return vertices[triangles[tri][corner]]; }
    double triangle_area(int tri) const;
    Vec3 triangle_centroid(int tri) const;
    /// Outward unit normal (valid for correctly oriented closed meshes).
    Vec3 triangle_normal(int tri) const;

    double total_area() const;

    /// Throws MeshError on any invariant violation, naming the offending element.
    void validate() const;
};

/// One RWG basis function: the interior edge shared by a plus and a minus
/// triangle. Current flows from the plus triangle into the minus triangle.
struct RwgEdge {
    int vertex_a = -1; ///< edge endpoints, vertex_a < vertex_b
    int vertex_b = -1;
    double length = 0.0; ///< m
    int tri_plus = -1;   ///< lower triangle index of the pair
    int tri_minus = -1;
    int free_vertex_plus = -1; ///< vertex of tri_plus opposite the edge
    int free_vertex_minus = -1;
    double area_plus = 0.0; ///< m^2
    double area_minus = 0.0;
};

/// RWG basis bookkeeping over a closed mesh: one entry per interior edge,
/// ordered by (vertex_a, vertex_b). For a closed mesh the count is 3*N_p/2.
struct RwgBasisSet {
    std::vector<RwgEdge> edges;
    int size() const { return static_cast<int>(edges.size()); }
};

/// Parse the plain-text mesh format: lines `v x y z` (meters) and
/// `f i j k` (1-based vertex indices), `#` comments. Validates on load.
TriangleMesh load_mesh(const std::string& path);

/// Write the same format, suitable for load_mesh round-trips.
void save_mesh(const TriangleMesh& mesh, const std::string& path);

/// Icosphere: subdivided icosahedron with midpoints projected radially at
/// each level. N_p = 20*4^level, N_n = 10*4^level + 2. The mesh is scaled so
/// the faceted surface area equals 4 pi r^2, which removes the effective
/// radius deficit a flat-facet sphere otherwise carries into RCS comparisons.
TriangleMesh generate_sphere(double radius, int subdivision_level);

/// Structured latitude/longitude tessellation: `meridians` slices around the
/// axis, `rings` interior latitude rows (plus the two poles), area-calibrated
/// like generate_sphere. N_p = 2*meridians*rings, N_n = meridians*rings + 2.
TriangleMesh generate_sphere_uv(double radius, int meridians, int rings);

/// Build the RWG edge-pair basis. Deterministic: edges sorted by vertex-index
/// pair; the plus triangle is the lower triangle index.
RwgBasisSet build_rwg(const TriangleMesh& mesh);

} // namespace efh
