#pragma once

#include <map>
#include <string>

#include "config.hpp"
#include "efie.hpp"
#include "farfield.hpp"
#include "hybrid.hpp"
#include "mesh.hpp"

namespace efh {

/// A fully assembled scattering problem.
struct AssembledProblem {
    TriangleMesh mesh;
    RwgBasisSet rwg;
    BackgroundMedium medium;
    PlaneWave wave;
    ComplexSystem complex_system;
    RealSystem real_system;
    std::string geometry_id;
    double assembly_seconds = 0.0;
};

/// Build the geometry named by the config and assemble Z, V, A, b.
AssembledProblem assemble_problem(const RunConfig& cfg);

/// Outcome of one experiment: 0 success, 2 a requested solve did not
/// converge, 1 error (raised as an exception instead).
struct RunResult {
    int exit_code = 0;
    std::map<std::string, std::string> summary; ///< also written to <out>/summary.txt
};

/// Execute the configured experiment end-to-end, writing CSV artifacts and a
/// key = value summary under cfg.output_dir.
RunResult run_experiment(const RunConfig& cfg);

/// Least-squares slope of log(y) against log(x); the scaling exponent.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

void write_sweep_csv(const RcsSweep& sweep, const std::string& path);

} // namespace efh
