#include "farfield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quadrature.hpp"

namespace efh {

namespace {

constexpr double kPi = std::numbers::pi;

struct Cd3 {
    Complex x{}, y{}, z{};
    void add(const Vec3& v, Complex s) {
        x += v.x * s;
        y += v.y * s;
        z += v.z * s;
    }
    double squared_norm() const { return std::norm(x) + std::norm(y) + std::norm(z); }
    Complex dot_real(const Vec3& v) const { return x * v.x + y * v.y + z * v.z; }
};

} // namespace

double radiated_rcs(const Eigen::VectorXcd& currents, const TriangleMesh& mesh,
                    const RwgBasisSet& rwg, const BackgroundMedium& medium, double frequency,
                    double theta_deg, double phi_deg, double incident_amplitude,
                    int quadrature_points) {
    if (currents.size() != rwg.size())
        throw std::invalid_argument("radiated_rcs: currents length mismatch");
    const double k = medium.wavenumber(frequency);
    const double omega = medium.angular_frequency(frequency);
    const double theta = theta_deg * kPi / 180.0;
    const double phi = phi_deg * kPi / 180.0;
    const Vec3 rhat{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                    std::cos(theta)};
    const auto& rule = triangle_rule(quadrature_points);

    // Radiation integral of the RWG expansion, accumulated per edge half.
    Cd3 radiation;
    for (int e = 0; e < rwg.size(); ++e) {
        const Complex coeff = currents(e);
        if (coeff == Complex(0.0, 0.0)) continue;
        const RwgEdge& edge = rwg.edges[e];
        const struct {
            int tri;
            double sign;
            int free_vertex;
            double area;
        } halves[2] = {{edge.tri_plus, +1.0, edge.free_vertex_plus, edge.area_plus},
                       {edge.tri_minus, -1.0, edge.free_vertex_minus, edge.area_minus}};
        for (const auto& h : halves) {
            const Vec3 a = mesh.triangle_vertex(h.tri, 0);
            const Vec3 b = mesh.triangle_vertex(h.tri, 1);
            const Vec3 c = mesh.triangle_vertex(h.tri, 2);
            const Vec3 vf = mesh.vertices[h.free_vertex];
            const double basis_scale = h.sign * edge.length / (2.0 * h.area);
            for (const auto& node : rule) {
                const Vec3 p = a * node.l1 + b * node.l2 + c * node.l3;
                const Complex phase = std::exp(Complex(0.0, k * rhat.dot(p)));
                radiation.add((p - vf) * basis_scale, coeff * phase * (node.weight * h.area));
            }
        }
    }

    // Transverse projection J - (J.rhat) rhat.
    const Complex radial = radiation.dot_real(rhat);
    Cd3 transverse = radiation;
    transverse.x -= radial * rhat.x;
    transverse.y -= radial * rhat.y;
    transverse.z -= radial * rhat.z;

    const double efar_sq = std::pow(omega * medium.permeability / (4.0 * kPi), 2) *
                           transverse.squared_norm();
    return 4.0 * kPi * efar_sq / (incident_amplitude * incident_amplitude);
}

namespace {

RcsSweep make_sweep(double frequency, double theta_step_deg) {
    RcsSweep sweep;
    sweep.frequency = frequency;
    for (double th = 0.0; th <= 180.0 + 1e-9; th += theta_step_deg)
        sweep.theta_deg.push_back(std::min(th, 180.0));
    return sweep;
}

double to_dbsm(double sigma) { return 10.0 * std::log10(std::max(sigma, 1e-300)); }

} // namespace

RcsSweep rcs_sweep(const Eigen::VectorXcd& currents, const TriangleMesh& mesh,
                   const RwgBasisSet& rwg, const BackgroundMedium& medium, double frequency,
                   double theta_step_deg, double incident_amplitude, int quadrature_points) {
    RcsSweep sweep = make_sweep(frequency, theta_step_deg);
    for (double th : sweep.theta_deg) {
        const double s = radiated_rcs(currents, mesh, rwg, medium, frequency, th, 0.0,
                                      incident_amplitude, quadrature_points);
        sweep.sigma_m2.push_back(s);
        sweep.sigma_dbsm.push_back(to_dbsm(s));
    }
    return sweep;
}

// ---------------------------------------------------------------------------
// Mie series for the PEC sphere.
// ---------------------------------------------------------------------------

namespace {

/// Riccati-Bessel psi_n(x) = x j_n(x) and chi_n(x) = -x y_n(x), n = 0..nmax,
/// by upward recurrence f_{n+1} = (2n+1)/x f_n - f_{n-1}.
void riccati_bessel(double x, int nmax, std::vector<double>& psi, std::vector<double>& chi) {
    psi.assign(nmax + 1, 0.0);
    chi.assign(nmax + 1, 0.0);
    psi[0] = std::sin(x);
    chi[0] = std::cos(x);
    if (nmax >= 1) {
        psi[1] = psi[0] / x - std::cos(x);
        chi[1] = chi[0] / x + std::sin(x);
    }
    for (int n = 1; n < nmax; ++n) {
        const double f = (2.0 * n + 1.0) / x;
        psi[n + 1] = f * psi[n] - psi[n - 1];
        chi[n + 1] = f * chi[n] - chi[n - 1];
    }
}

} // namespace

double mie_rcs(double radius, const BackgroundMedium& medium, double frequency, double theta_deg,
               int extra_terms) {
    if (radius <= 0.0) throw std::invalid_argument("mie_rcs: radius must be positive");
    const double k = medium.wavenumber(frequency);
    const double x = k * radius;
    const int nmax = static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 2.0)) + extra_terms;

    std::vector<double> psi, chi;
    riccati_bessel(x, nmax, psi, chi);

    // The incident wave travels -z, so the scattering angle is measured from
    // -z: cos(Theta) = -cos(theta). The x-polarized field lies in the phi = 0
    // observation plane, which selects the parallel scattering amplitude.
    const double mu = -std::cos(theta_deg * kPi / 180.0);

    Complex s_parallel = 0.0;
    double pi_prev = 0.0; // pi_0
    double pi_cur = 1.0;  // pi_1
    for (int n = 1; n <= nmax; ++n) {
        // Derivatives via psi_n'(x) = psi_{n-1}(x) - n psi_n(x)/x.
        const double psi_d = psi[n - 1] - n * psi[n] / x;
        const double chi_d = chi[n - 1] - n * chi[n] / x;
        const Complex xi(psi[n], -chi[n]);
        const Complex xi_d(psi_d, -chi_d);
        const Complex a_n = psi_d / xi_d; // PEC limit
        const Complex b_n = psi[n] / xi;

        const double tau = n * mu * pi_cur - (n + 1.0) * pi_prev;
        s_parallel += (2.0 * n + 1.0) / (n * (n + 1.0)) * (a_n * tau + b_n * pi_cur);

        const double pi_next = ((2.0 * n + 1.0) * mu * pi_cur - (n + 1.0) * pi_prev) / n;
        pi_prev = pi_cur;
        pi_cur = pi_next;
    }
    return 4.0 * kPi * std::norm(s_parallel) / (k * k);
}

RcsSweep mie_sweep(double radius, const BackgroundMedium& medium, double frequency,
                   double theta_step_deg, int extra_terms) {
    RcsSweep sweep = make_sweep(frequency, theta_step_deg);
    for (double th : sweep.theta_deg) {
        const double s = mie_rcs(radius, medium, frequency, th, extra_terms);
        sweep.sigma_m2.push_back(s);
        sweep.sigma_dbsm.push_back(to_dbsm(s));
    }
    sweep.solver_id = "mie";
    return sweep;
}

double rcs_relative_error(const RcsSweep& test, const RcsSweep& reference) {
    if (test.theta_deg.size() != reference.theta_deg.size())
        throw std::invalid_argument("rcs_relative_error: sweep grids differ in size");
    for (size_t i = 0; i < test.theta_deg.size(); ++i)
        if (std::abs(test.theta_deg[i] - reference.theta_deg[i]) > 1e-9)
            throw std::invalid_argument("rcs_relative_error: sweep grids differ");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < test.sigma_m2.size(); ++i) {
        const double d = test.sigma_m2[i] - reference.sigma_m2[i];
        num += d * d;
        den += reference.sigma_m2[i] * reference.sigma_m2[i];
    }
    if (den <= 0.0) throw std::invalid_argument("rcs_relative_error: zero reference norm");
    return std::sqrt(num / den);
}

std::vector<SurfaceCurrentSample> surface_currents(const Eigen::VectorXcd& currents,
                                                   const TriangleMesh& mesh,
                                                   const RwgBasisSet& rwg) {
    std::vector<Cd3> j(mesh.triangle_count());
    for (int e = 0; e < rwg.size(); ++e) {
        const RwgEdge& edge = rwg.edges[e];
        const Vec3 cp = mesh.triangle_centroid(edge.tri_plus);
        const Vec3 cm = mesh.triangle_centroid(edge.tri_minus);
        j[edge.tri_plus].add((cp - mesh.vertices[edge.free_vertex_plus]) *
                                 (edge.length / (2.0 * edge.area_plus)),
                             currents(e));
        j[edge.tri_minus].add((mesh.vertices[edge.free_vertex_minus] - cm) *
                                  (edge.length / (2.0 * edge.area_minus)),
                              currents(e));
    }
    std::vector<SurfaceCurrentSample> out(mesh.triangle_count());
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        out[t].centroid = mesh.triangle_centroid(t);
        out[t].magnitude = std::sqrt(j[t].squared_norm());
    }
    return out;
}

} // namespace efh
