#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "statevector.hpp"

namespace efh {

enum class GateKind { RY, CNOT, CZ, H, X, CPhase, ControlledUnitary, SelectRY };

const char* gate_name(GateKind kind);

/// One circuit operation. Targets and controls are qubit indices; `angle`
/// holds RY theta / controlled-phase phi; dense unitaries and SelectRY angle
/// tables are shared so circuits stay cheap to copy.
struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<int> controls;
    double angle = 0.0;
    std::shared_ptr<const Eigen::MatrixXcd> unitary;    ///< ControlledUnitary only
    std::shared_ptr<const std::vector<double>> angles;  ///< SelectRY only
};

/// Stochastic per-gate Pauli noise: after a gate of a noisy kind, each target
/// qubit is hit with probability `probability` by a uniformly chosen
/// non-identity Pauli. probability = 0 reproduces noiseless evolution
/// bit-exactly.
struct NoiseModel {
    double probability = 0.0;
    std::set<GateKind> noisy_kinds{GateKind::RY, GateKind::CNOT};

    bool enabled() const { return probability > 0.0; }
};

/// Gate program. Execution applies gates in order, inserting trajectory noise
/// after gates of noisy kinds when a model is given.
class Circuit {
public:
    explicit Circuit(int qubits) : qubits_(qubits) {}

    int qubit_count() const { return qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    void ry(int q, double theta);
    void h(int q);
    void x(int q);
    void cnot(int control, int target);
    void cz(int a, int b);
    void cphase(int control, int target, double phi);
    void controlled_unitary(std::vector<int> targets, std::vector<int> controls,
                            std::shared_ptr<const Eigen::MatrixXcd> unitary);
    void select_ry(int ancilla, std::vector<int> selector,
                   std::shared_ptr<const std::vector<double>> angles);

    /// Quantum Fourier transform (or its inverse) on the given qubits,
    /// selector[0] = least significant. Swaps are expanded into CNOT triples.
    void qft(const std::vector<int>& qubits, bool inverse);

    void run(StateVector& state, const NoiseModel& noise, Rng& rng) const;
    void run(StateVector& state) const; ///< noiseless

    /// Debug trace: one line per gate, `name targets controls params`.
    void dump(std::ostream& os) const;

private:
    int qubits_;
    std::vector<Gate> gates_;
};

} // namespace efh
