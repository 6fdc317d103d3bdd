#pragma once

#include <Eigen/Dense>
#include <complex>

#include "medium.hpp"
#include "mesh.hpp"

namespace efh {

using Complex = std::complex<double>;

/// Time-harmonic free-space Green function e^{-jkR}/(4 pi R). R must be > 0;
/// the R -> 0 singularity is handled only inside assembly via extraction.
Complex green(double distance, double wavenumber);

/// Dense Galerkin system Z I = V over the RWG basis.
struct ComplexSystem {
    Eigen::MatrixXcd impedance;  ///< N_e x N_e, Ohm
    Eigen::VectorXcd excitation; ///< N_e, V
    int size() const { return static_cast<int>(impedance.rows()); }
};

/// Real symmetric form A x = b of the complex system, N = 2 N_e:
///   A = [[Re Z, Im Z], [Im Z, -Re Z]],  b = [Re V; Im V],  x = [Re I; -Im I].
struct RealSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    int size() const { return static_cast<int>(matrix.rows()); }
};

/// Assembly controls. Non-touching triangle pairs use `base_points` Gauss
/// points on each triangle; pairs sharing at least one vertex use
/// `near_points` plus analytic extraction of the static kernel.
struct AssemblyOptions {
    int base_points = 4; ///< in {1,3,4,7}
    int near_points = 7;
};

/// Galerkin impedance matrix of the EFIE for the mixed-potential kernel:
///   Z[a][b] = j w mu Int Int f_a.f_b G  +  1/(j w eps) Int Int (div f_a)(div' f_b) G
/// Self and touching pairs use singularity extraction: the 1/(4 pi R) static
/// term is integrated in closed form, the smooth remainder by quadrature.
/// The result is symmetric by construction (upper triangle mirrored).
Eigen::MatrixXcd assemble_impedance(const TriangleMesh& mesh, const RwgBasisSet& rwg,
                                    const BackgroundMedium& medium, double frequency,
                                    const AssemblyOptions& options = {});

/// Excitation vector V[a] = Int f_a . E_inc dS with the same base quadrature.
Eigen::VectorXcd assemble_excitation(const TriangleMesh& mesh, const RwgBasisSet& rwg,
                                     const PlaneWave& wave, const AssemblyOptions& options = {});

/// Convert Z I = V into the real block form A x = b. Throws NumericError if Z
/// is asymmetric beyond 1e-10 relative.
RealSystem realify(const ComplexSystem& system);

/// Map a real solution x back to complex currents: I[b] = x[b] - j x[N_e + b].
Eigen::VectorXcd complexify_solution(const Eigen::VectorXd& x, int edge_count);

} // namespace efh
