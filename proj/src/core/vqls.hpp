#pragma once

#include <Eigen/Dense>
#include <vector>

#include "circuit.hpp"
#include "statevector.hpp"

namespace efh {

/// Controls for the variational linear solver.
struct VqlsOptions {
    int layers = 1;                ///< hardware-efficient ansatz repetitions
    double cost_threshold = 1e-3;  ///< stop when the global cost falls below this
    int max_iterations = 2000;     ///< total optimizer iterations across restarts
    double learning_rate = 0.1;
    int restarts = 5;              ///< random re-initializations on stagnation
    int shots = 0;                 ///< 0 = exact expectations; > 0 = sampled overlap
};

struct VqlsTracePoint {
    int iteration;
    double cost;
    double gradient_norm;
};

struct VqlsResult {
    Eigen::VectorXd solution_direction; ///< unit vector from the trained circuit
    std::vector<double> parameters;     ///< best ansatz angles found
    double cost = 1.0;                  ///< best cost reached
    bool converged = false;
    int iterations = 0;                 ///< optimizer iterations spent
    int total_qubits = 0;               ///< log2(dim)
    std::vector<VqlsTracePoint> trace;
    double imag_residue = 0.0;
};

/// Build the hardware-efficient ansatz: per-qubit RY layer followed by a CNOT
/// chain (qubit i controls i+1), repeated `layers` times, then a closing RY
/// layer. Parameter count is (layers + 1) * qubits.
Circuit vqls_ansatz(int qubits, int layers, const std::vector<double>& parameters);

int vqls_parameter_count(int qubits, int layers);

/// Train the ansatz to minimize the global cost
///   C_G(theta) = 1 - |<f_hat | C x(theta) / ||C x(theta)||>|^2
/// by gradient descent with parameter-shift gradients, warm-startable via
/// `initial_parameters`, restarting on stagnation. The matrix dimension must
/// be a power of two (pad first). Returns the best state found even when the
/// threshold was not reached (converged = false).
VqlsResult vqls_solve(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs,
                      const VqlsOptions& options, const NoiseModel& noise, Rng& rng,
                      const std::vector<double>* initial_parameters = nullptr);

int vqls_total_qubits(int dim);

} // namespace efh
