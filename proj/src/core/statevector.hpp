#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace efh {

using Amplitude = std::complex<double>;
using Rng = std::mt19937_64;

/// Full complex amplitude vector of an n-qubit register. Qubit 0 is the least
/// significant bit of the basis-state index. Capacity is capped at 22 qubits.
class StateVector {
public:
    explicit StateVector(int qubits); ///< |0...0>
    static StateVector from_amplitudes(int qubits, std::vector<Amplitude> amplitudes);

    int qubit_count() const { return qubits_; }
    std::size_t dimension() const { return amp_.size(); }
    const std::vector<Amplitude>& amplitudes() const { return amp_; }
    Amplitude amplitude(std::size_t basis_state) const { return amp_[basis_state]; }

    double norm() const;

    void apply_h(int q);
    void apply_x(int q);
    void apply_ry(int q, double theta);
    void apply_pauli(int q, int which); ///< 0 = X, 1 = Y, 2 = Z
    void apply_cnot(int control, int target);
    void apply_cz(int a, int b);
    void apply_cphase(int control, int target, double phi);

    /// Dense unitary on `targets` (targets[0] is the LSB of the block index),
    /// applied where every control qubit is 1. The matrix must be unitary
    /// within 1e-10 (max norm of U^dag U - I).
    void apply_controlled_unitary(const std::vector<int>& targets, const std::vector<int>& controls,
                                  const Eigen::MatrixXcd& unitary);

    /// Ancilla rotation keyed on the value of a register: for every basis
    /// state, RY(angles[value(clock)]) acts on `ancilla`. This is the
    /// eigenvalue-inversion step of HHL applied in one pass.
    void apply_select_ry(int ancilla, const std::vector<int>& selector,
                         const std::vector<double>& angles);

    /// Projective measurement of one qubit; collapses and renormalizes.
    int measure(int q, Rng& rng);

    Amplitude inner_product(const StateVector& other) const;

private:
    void apply_1q(int q, Amplitude u00, Amplitude u01, Amplitude u10, Amplitude u11);
    void check_qubit(int q) const;

    int qubits_;
    std::vector<Amplitude> amp_;
};

} // namespace efh
