#pragma once

#include <Eigen/Dense>
#include <utility>

#include "statevector.hpp"

namespace efh {

/// Symmetric embedding of a general square matrix so Hermitian-only solvers
/// apply: H = [[0, C], [C^T, 0]], g = [f; 0]. The solution of H w = g is
/// w = [0; z] with C z = f, and the eigenvalues of H are +/- the singular
/// values of C.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> hermitian_dilation(const Eigen::MatrixXd& matrix,
                                                               const Eigen::VectorXd& rhs);

/// Pad a system to the next power of two with an identity block and zero rhs;
/// the padded solution coordinates are exactly zero. A power-of-two system is
/// returned unchanged.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> pad_pow2(const Eigen::MatrixXd& matrix,
                                                     const Eigen::VectorXd& rhs);

/// Number of qubits needed to index `dim` basis states (ceil(log2), >= 1).
int qubits_for_dimension(int dim);

/// Read a classical direction out of a quantum state: real parts of the first
/// `dim` amplitudes, renormalized to unit length. `imag_residue` (if given)
/// receives the norm fraction lost to imaginary parts and truncation; callers
/// should warn above 1e-6 since real systems must yield real solutions.
/// Throws NumericError when the truncated real part has zero norm.
Eigen::VectorXd extract_classical(const StateVector& state, int dim,
                                  double* imag_residue = nullptr);

} // namespace efh
