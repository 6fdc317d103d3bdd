#include "efie.hpp"

#include <numbers>
#include <stdexcept>

#include "errors.hpp"
#include "quadrature.hpp"

namespace efh {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

struct EdgeOnTriangle {
    int edge;         ///< RWG edge index
    double sign;      ///< +1 if this triangle is the plus triangle
    int free_vertex;  ///< vertex opposite the edge
};

/// Kernel moments of one ordered (test, source) triangle pair:
///   m00   = II G,   mr = II r G,   mrp = II r' G,   mdot = II (r.r') G
/// with r on the test triangle and r' on the source triangle. All edge-pair
/// couplings of the two triangles are algebraic in these four moments.
struct PairMoments {
    Complex m00{};
    Complex mr[3]{};
    Complex mrp[3]{};
    Complex mdot{};
};

struct TriangleCache {
    Vec3 v0, v1, v2;
    double area;
    std::vector<Vec3> base_points, near_points;
    std::vector<EdgeOnTriangle> edges;
};

void accumulate(PairMoments& m, const Vec3& p, const Vec3& q, Complex g) {
    m.m00 += g;
    m.mr[0] += p.x * g;
    m.mr[1] += p.y * g;
    m.mr[2] += p.z * g;
    m.mrp[0] += q.x * g;
    m.mrp[1] += q.y * g;
    m.mrp[2] += q.z * g;
    m.mdot += p.dot(q) * g;
}

/// Smooth remainder after extracting the static kernel: (e^{-jkR} - 1)/(4 pi R),
/// finite (-jk/(4 pi)) at R = 0.
Complex smooth_green(double r, double k) {
    if (r < 1e-30) return Complex(0.0, -k / kFourPi);
    const Complex num = std::exp(Complex(0.0, -k * r)) - 1.0;
    return num / (kFourPi * r);
}

/// Separated (non-touching) pair: plain double quadrature of G.
PairMoments far_moments(const TriangleCache& test, const TriangleCache& src,
                        const std::vector<TriQuadNode>& rule, double k) {
    PairMoments m;
    const double scale = test.area * src.area;
    for (size_t i = 0; i < rule.size(); ++i) {
        const Vec3& p = test.base_points[i];
        for (size_t j = 0; j < rule.size(); ++j) {
            const Vec3& q = src.base_points[j];
            const Complex g = green((p - q).norm(), k) * (rule[i].weight * rule[j].weight * scale);
            accumulate(m, p, q, g);
        }
    }
    return m;
}

/// Touching pair (shared vertex, edge, or identical): the source integral of
/// the static 1/(4 pi R) part is analytic, the remainder uses quadrature.
PairMoments near_moments(const TriangleCache& test, const TriangleCache& src,
                         const std::vector<TriQuadNode>& rule, double k) {
    PairMoments m;
    const double scale = test.area * src.area;
    for (size_t i = 0; i < rule.size(); ++i) {
        const Vec3& p = test.near_points[i];
        const double wi = rule[i].weight;
        for (size_t j = 0; j < rule.size(); ++j) {
            const Vec3& q = src.near_points[j];
            const Complex g = smooth_green((p - q).norm(), k) * (wi * rule[j].weight * scale);
            accumulate(m, p, q, g);
        }
        // Analytic static part: Int_src 1/(4 pi R) dS' and Int_src r'/(4 pi R) dS'.
        const StaticPotentials st = static_triangle_potentials(p, src.v0, src.v1, src.v2);
        const double w = wi * test.area / kFourPi;
        const double s0 = st.scalar * w;
        const Vec3 s1 = (st.vector + st.projection * st.scalar) * w;
        m.m00 += s0;
        m.mr[0] += p.x * s0;
        m.mr[1] += p.y * s0;
        m.mr[2] += p.z * s0;
        m.mrp[0] += s1.x;
        m.mrp[1] += s1.y;
        m.mrp[2] += s1.z;
        m.mdot += p.x * s1.x + p.y * s1.y + p.z * s1.z;
    }
    return m;
}

/// Coupling of test edge a with source edge b from one ordered triangle pair.
Complex edge_pair_value(const PairMoments& m, const Vec3& va, const Vec3& vb,
                        double sign_a, double sign_b, double la, double lb, double area_test,
                        double area_src, Complex j_omega_mu, Complex inv_j_omega_eps) {
    const Complex rv = m.mdot -
                       (m.mr[0] * vb.x + m.mr[1] * vb.y + m.mr[2] * vb.z) -
                       (m.mrp[0] * va.x + m.mrp[1] * va.y + m.mrp[2] * va.z) +
                       va.dot(vb) * m.m00;
    const double ss = sign_a * sign_b;
    const double c_vec = ss * la * lb / (4.0 * area_test * area_src);
    const double c_div = ss * la * lb / (area_test * area_src);
    return j_omega_mu * c_vec * rv + inv_j_omega_eps * c_div * m.m00;
}

bool triangles_touch(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    for (int i : a)
        for (int j : b)
            if (i == j) return true;
    return false;
}

} // namespace

Complex green(double distance, double wavenumber) {
    if (distance <= 0.0) throw std::domain_error("green: R must be positive");
    return std::exp(Complex(0.0, -wavenumber * distance)) / (kFourPi * distance);
}

Eigen::MatrixXcd assemble_impedance(const TriangleMesh& mesh, const RwgBasisSet& rwg,
                                    const BackgroundMedium& medium, double frequency,
                                    const AssemblyOptions& options) {
    if (frequency <= 0.0) throw std::invalid_argument("assemble_impedance: frequency must be > 0");
    const auto& base_rule = triangle_rule(options.base_points);
    const auto& near_rule = triangle_rule(options.near_points);

    const double omega = medium.angular_frequency(frequency);
    const double k = medium.wavenumber(frequency);
    const Complex j_omega_mu(0.0, omega * medium.permeability);
    const Complex inv_j_omega_eps = 1.0 / Complex(0.0, omega * medium.permittivity);

    const int n_tri = mesh.triangle_count();
    std::vector<TriangleCache> cache(n_tri);
    for (int t = 0; t < n_tri; ++t) {
        auto& c = cache[t];
        c.v0 = mesh.triangle_vertex(t, 0);
        c.v1 = mesh.triangle_vertex(t, 1);
        c.v2 = mesh.triangle_vertex(t, 2);
        c.area = mesh.triangle_area(t);
        c.base_points = map_rule(base_rule, c.v0, c.v1, c.v2);
        c.near_points = map_rule(near_rule, c.v0, c.v1, c.v2);
    }
    for (int e = 0; e < rwg.size(); ++e) {
        const RwgEdge& edge = rwg.edges[e];
        cache[edge.tri_plus].edges.push_back({e, +1.0, edge.free_vertex_plus});
        cache[edge.tri_minus].edges.push_back({e, -1.0, edge.free_vertex_minus});
    }

    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(rwg.size(), rwg.size());

    for (int t1 = 0; t1 < n_tri; ++t1) {
        const TriangleCache& c1 = cache[t1];
        for (int t2 = t1; t2 < n_tri; ++t2) {
            const TriangleCache& c2 = cache[t2];
            const bool touching = triangles_touch(mesh.triangles[t1], mesh.triangles[t2]);

            if (!touching) {
                // One quadrature serves both orderings exactly (reciprocal kernel).
                const PairMoments m = far_moments(c1, c2, base_rule, k);
                for (const auto& ea : c1.edges) {
                    const Vec3& va = mesh.vertices[ea.free_vertex];
                    for (const auto& eb : c2.edges) {
                        const Vec3& vb = mesh.vertices[eb.free_vertex];
                        const Complex val = edge_pair_value(
                            m, va, vb, ea.sign, eb.sign, rwg.edges[ea.edge].length,
                            rwg.edges[eb.edge].length, c1.area, c2.area, j_omega_mu,
                            inv_j_omega_eps);
                        z(ea.edge, eb.edge) += val;
                        z(eb.edge, ea.edge) += val;
                    }
                }
                continue;
            }

            // Touching pair: extraction breaks the test/source symmetry of the
            // quadrature, so evaluate both orderings and average to keep Z
            // exactly symmetric.
            const PairMoments m12 = near_moments(c1, c2, near_rule, k);
            const PairMoments m21 =
                (t1 == t2) ? m12 : near_moments(c2, c1, near_rule, k);
            for (const auto& ea : c1.edges) {
                const Vec3& va = mesh.vertices[ea.free_vertex];
                const double la = rwg.edges[ea.edge].length;
                for (const auto& eb : c2.edges) {
                    const Vec3& vb = mesh.vertices[eb.free_vertex];
                    const double lb = rwg.edges[eb.edge].length;
                    const Complex fwd = edge_pair_value(m12, va, vb, ea.sign, eb.sign, la, lb,
                                                        c1.area, c2.area, j_omega_mu,
                                                        inv_j_omega_eps);
                    const Complex rev = edge_pair_value(m21, vb, va, eb.sign, ea.sign, lb, la,
                                                        c2.area, c1.area, j_omega_mu,
                                                        inv_j_omega_eps);
                    const Complex val = 0.5 * (fwd + rev);
                    if (t1 == t2) {
                        z(ea.edge, eb.edge) += val;
                    } else {
                        z(ea.edge, eb.edge) += val;
                        z(eb.edge, ea.edge) += val;
                    }
                }
            }
        }
    }
    return z;
}

Eigen::VectorXcd assemble_excitation(const TriangleMesh& mesh, const RwgBasisSet& rwg,
                                     const PlaneWave& wave, const AssemblyOptions& options) {
    wave.validate();
    const auto& rule = triangle_rule(options.base_points);
    const double k = BackgroundMedium{}.wavenumber(wave.frequency);

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rwg.size());
    for (int e = 0; e < rwg.size(); ++e) {
        const RwgEdge& edge = rwg.edges[e];
        const struct {
            int tri;
            double sign;
            int free_vertex;
            double area;
        } halves[2] = {{edge.tri_plus, +1.0, edge.free_vertex_plus, edge.area_plus},
                       {edge.tri_minus, -1.0, edge.free_vertex_minus, edge.area_minus}};
        Complex sum = 0.0;
        for (const auto& h : halves) {
            const Vec3 a = mesh.triangle_vertex(h.tri, 0);
            const Vec3 b = mesh.triangle_vertex(h.tri, 1);
            const Vec3 c = mesh.triangle_vertex(h.tri, 2);
            const Vec3 vf = mesh.vertices[h.free_vertex];
            for (const auto& node : rule) {
                const Vec3 p = a * node.l1 + b * node.l2 + c * node.l3;
                const Complex phase =
                    wave.amplitude * std::exp(Complex(0.0, -k * wave.propagation.dot(p)));
                const Vec3 rho = p - vf;
                sum += node.weight * h.area * h.sign * (edge.length / (2.0 * h.area)) *
                       rho.dot(wave.polarization) * phase;
            }
        }
        v(e) = sum;
    }
    return v;
}

RealSystem realify(const ComplexSystem& system) {
    const int n = system.size();
    const double scale = system.impedance.cwiseAbs().maxCoeff();
    const double asym = (system.impedance - system.impedance.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale)
        throw NumericError("realify: impedance matrix asymmetric beyond tolerance");

    RealSystem real;
    real.matrix.resize(2 * n, 2 * n);
    const Eigen::MatrixXd zr = system.impedance.real();
    const Eigen::MatrixXd zi = system.impedance.imag();
    real.matrix.topLeftCorner(n, n) = zr;
    real.matrix.topRightCorner(n, n) = zi;
    real.matrix.bottomLeftCorner(n, n) = zi;
    real.matrix.bottomRightCorner(n, n) = -zr;
    real.rhs.resize(2 * n);
    real.rhs.head(n) = system.excitation.real();
    real.rhs.tail(n) = system.excitation.imag();
    return real;
}

Eigen::VectorXcd complexify_solution(const Eigen::VectorXd& x, int edge_count) {
    if (x.size() != 2 * edge_count)
        throw std::invalid_argument("complexify_solution: length mismatch");
    Eigen::VectorXcd currents(edge_count);
    for (int i = 0; i < edge_count; ++i) currents(i) = Complex(x(i), -x(edge_count + i));
    return currents;
}

} // namespace efh
