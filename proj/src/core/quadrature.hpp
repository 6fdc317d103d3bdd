#pragma once

#include <vector>

#include "vec3.hpp"

namespace efh {

/// One quadrature node: barycentric coordinates and weight (weights sum to 1,
/// so physical weights are w * area).
struct TriQuadNode {
    double l1, l2, l3;
    double weight;
};

/// Symmetric Gauss rules on the reference triangle. Supported point counts:
/// 1 (degree 1), 3 (degree 2), 4 (degree 3), 7 (degree 5).
const std::vector<TriQuadNode>& triangle_rule(int points);

/// Physical quadrature points of a rule mapped onto a triangle (a,b,c).
std::vector<Vec3> map_rule(const std::vector<TriQuadNode>& rule, const Vec3& a, const Vec3& b,
                           const Vec3& c);

/// Closed-form potential integrals of the static kernel 1/R over a flat
/// triangle, needed by singularity extraction:
///
///   scalar = Int_T 1/R dS'
///   vector = Int_T (r' - proj) / R dS'
///
/// where proj is the projection of the observation point onto the triangle
/// plane. The observation point may lie on the triangle itself as long as it
/// is not exactly on an edge line.
struct StaticPotentials {
    double scalar = 0.0;
    Vec3 vector; ///< in-plane
    Vec3 projection;
};

StaticPotentials static_triangle_potentials(const Vec3& observation, const Vec3& a, const Vec3& b,
                                            const Vec3& c);

} // namespace efh
