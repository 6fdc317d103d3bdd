#pragma once

#include <Eigen/Dense>

#include "circuit.hpp"
#include "statevector.hpp"

namespace efh {

/// Controls for the phase-estimation linear solver.
struct HhlOptions {
    int clock_qubits = 10;          ///< m; phase resolution is 2^-m
    double evolution_time = 0.0;    ///< t; 0 selects pi / (1.05 * lambda_max)
    double rotation_constant = 0.0; ///< C in RY(2 asin(C/lambda)); 0 selects 0.9 * |lambda|_min
    int max_attempts = 2000;        ///< postselection repetitions
};

struct HhlResult {
    Eigen::VectorXd solution_direction; ///< unit vector, approximates H^{-1} g normalized
    int attempts = 0;                   ///< circuit repetitions until postselection succeeded
    int total_qubits = 0;               ///< 1 + m + log2(dim)
    double imag_residue = 0.0;
};

/// Phase-estimation solve of H w = g for symmetric H: prepares |g>, runs QPE
/// with controlled powers of e^{jHt} (injected as exact dense unitaries from
/// the eigendecomposition), rotates the ancilla by 2 asin(C/lambda) keyed on
/// the clock value, uncomputes QPE, and postselects the ancilla on |1> (and
/// the clock back on |0>). Repeats until postselection succeeds or
/// max_attempts is exhausted (NumericError). Negative eigenvalues are handled
/// by two's-complement phase decoding; eigenvalues outside the configured
/// phase range raise NumericError (wraparound).
HhlResult hhl_solve(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXd& rhs,
                    const HhlOptions& options, const NoiseModel& noise, Rng& rng);

/// Qubit budget of a solve at the given system dimension.
int hhl_total_qubits(int dim, int clock_qubits);

} // namespace efh
