#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "efie.hpp"
#include "medium.hpp"
#include "mesh.hpp"

namespace efh {

/// Bistatic RCS cut over theta at fixed phi. Linear values are m^2.
struct RcsSweep {
    std::vector<double> theta_deg;
    std::vector<double> sigma_m2;
    std::vector<double> sigma_dbsm;
    double frequency = 0.0;
    std::string geometry_id;
    std::string solver_id;
};

/// Bistatic RCS of the radiated far field of an RWG current at one angle:
///   sigma = 4 pi |E_far|^2 / |E_inc|^2,
///   E_far = -j w mu / (4 pi) Int [J - (J.rhat) rhat] e^{+jk rhat.r'} dS'
/// (r-normalized far zone, same quadrature order as assembly).
double radiated_rcs(const Eigen::VectorXcd& currents, const TriangleMesh& mesh,
                    const RwgBasisSet& rwg, const BackgroundMedium& medium, double frequency,
                    double theta_deg, double phi_deg, double incident_amplitude = 1.0,
                    int quadrature_points = 4);

/// Sweep theta in [0, 180] degrees at phi = 0 with the given step.
RcsSweep rcs_sweep(const Eigen::VectorXcd& currents, const TriangleMesh& mesh,
                   const RwgBasisSet& rwg, const BackgroundMedium& medium, double frequency,
                   double theta_step_deg = 1.0, double incident_amplitude = 1.0,
                   int quadrature_points = 4);

/// Exact PEC-sphere bistatic RCS (E-plane cut phi = 0) for an x-polarized
/// plane wave traveling in -z, from the Mie series truncated at
/// L = ceil(ka + 4 (ka)^(1/3) + 2) terms (plus `extra_terms`).
double mie_rcs(double radius, const BackgroundMedium& medium, double frequency, double theta_deg,
               int extra_terms = 0);

RcsSweep mie_sweep(double radius, const BackgroundMedium& medium, double frequency,
                   double theta_step_deg = 1.0, int extra_terms = 0);

/// Relative sweep error ||sigma_test - sigma_ref||_2 / ||sigma_ref||_2 over the
/// linear-scale samples. Throws on grid mismatch or zero reference norm.
double rcs_relative_error(const RcsSweep& test, const RcsSweep& reference);

/// Complex surface current density at each triangle centroid (A/m).
struct SurfaceCurrentSample {
    Vec3 centroid;
    double magnitude; ///< |J| across both complex components
};
std::vector<SurfaceCurrentSample> surface_currents(const Eigen::VectorXcd& currents,
                                                   const TriangleMesh& mesh,
                                                   const RwgBasisSet& rwg);

} // namespace efh
