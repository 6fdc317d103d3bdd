#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace efh {

const std::vector<TriQuadNode>& triangle_rule(int points) {
    static const std::vector<TriQuadNode> rule1 = {{1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0}};
    static const std::vector<TriQuadNode> rule3 = {
        {2.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3},
        {1.0 / 6, 2.0 / 3, 1.0 / 6, 1.0 / 3},
        {1.0 / 6, 1.0 / 6, 2.0 / 3, 1.0 / 3},
    };
    static const std::vector<TriQuadNode> rule4 = {
        {1.0 / 3, 1.0 / 3, 1.0 / 3, -27.0 / 48},
        {0.6, 0.2, 0.2, 25.0 / 48},
        {0.2, 0.6, 0.2, 25.0 / 48},
        {0.2, 0.2, 0.6, 25.0 / 48},
    };
    // 7-point degree-5 rule (Strang-Fix).
    static const std::vector<TriQuadNode> rule7 = [] {
        const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
        const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
        return std::vector<TriQuadNode>{
            {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
            {a1, b1, b1, w1},
            {b1, a1, b1, w1},
            {b1, b1, a1, w1},
            {a2, b2, b2, w2},
            {b2, a2, b2, w2},
            {b2, b2, a2, w2},
        };
    }();

    switch (points) {
        case 1: return rule1;
        case 3: return rule3;
        case 4: return rule4;
        case 7: return rule7;
        default: throw std::invalid_argument("unsupported triangle rule: " + std::to_string(points));
    }
}

std::vector<Vec3> map_rule(const std::vector<TriQuadNode>& rule, const Vec3& a, const Vec3& b,
                           const Vec3& c) {
    std::vector<Vec3> pts;
    pts.reserve(rule.size());
    for (const auto& n : rule) pts.push_back(a * n.l1 + b * n.l2 + c * n.l3);
    return pts;
}

StaticPotentials static_triangle_potentials(const Vec3& observation, const Vec3& a, const Vec3& b,
                                            const Vec3& c) {
    const Vec3 normal = (b - a).cross(c - a).normalized();
    const double height = (observation - a).dot(normal); // signed distance to plane
    const Vec3 proj = observation - normal * height;
    const double abs_h = std::abs(height);

    StaticPotentials out;
    out.projection = proj;

    const Vec3 corners[3] = {a, b, c};
    for (int i = 0; i < 3; ++i) {
        const Vec3 va = corners[i];
        const Vec3 vb = corners[(i + 1) % 3];
        const double edge_len = (vb - va).norm();
        const Vec3 ehat = (vb - va) / edge_len;
        const Vec3 mhat = ehat.cross(normal); // outward in-plane edge normal (CCW triangle)

        const double s_minus = (va - proj).dot(ehat);
        const double s_plus = (vb - proj).dot(ehat);
        const double t = (va - proj).dot(mhat); // perpendicular distance in plane, signed
        const double r0sq = t * t + height * height;
        const double r_minus = std::sqrt(s_minus * s_minus + r0sq);
        const double r_plus = std::sqrt(s_plus * s_plus + r0sq);

        // Observation collinear with the edge: both contributions vanish in the limit.
        if (r0sq < 1e-28 * edge_len * edge_len) continue;

        // ln((R+ + s+)/(R- + s-)) with the form chosen to avoid cancellation.
        double log_term;
        if (s_minus + s_plus >= 0.0)
            log_term = std::log((r_plus + s_plus) / (r_minus + s_minus));
        else
            log_term = std::log((r_minus - s_minus) / (r_plus - s_plus));

        out.scalar += t * log_term;
        if (abs_h > 0.0)
            out.scalar -= abs_h * (std::atan2(t * s_plus, r0sq + abs_h * r_plus) -
                                   std::atan2(t * s_minus, r0sq + abs_h * r_minus));

        // Int_edge R dl, antiderivative (s R + R0^2 ln(s + R)) / 2.
        const double edge_integral =
            0.5 * (s_plus * r_plus - s_minus * r_minus + r0sq * log_term);
        out.vector += mhat * edge_integral;
    }
    return out;
}

} // namespace efh
