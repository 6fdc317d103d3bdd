#include "circuit.hpp"

#include <numbers>
#include <ostream>
#include <stdexcept>

namespace efh {

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RY: return "ry";
        case GateKind::CNOT: return "cnot";
        case GateKind::CZ: return "cz";
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::CPhase: return "cphase";
        case GateKind::ControlledUnitary: return "cunitary";
        case GateKind::SelectRY: return "select-ry";
    }
    return "?";
}

void Circuit::ry(int q, double theta) { gates_.push_back({GateKind::RY, {q}, {}, theta, {}, {}}); }
void Circuit::h(int q) { gates_.push_back({GateKind::H, {q}, {}, 0.0, {}, {}}); }
void Circuit::x(int q) { gates_.push_back({GateKind::X, {q}, {}, 0.0, {}, {}}); }
void Circuit::cnot(int control, int target) {
    gates_.push_back({GateKind::CNOT, {target}, {control}, 0.0, {}, {}});
}
void Circuit::cz(int a, int b) { gates_.push_back({GateKind::CZ, {a, b}, {}, 0.0, {}, {}}); }
void Circuit::cphase(int control, int target, double phi) {
    gates_.push_back({GateKind::CPhase, {target}, {control}, phi, {}, {}});
}
void Circuit::controlled_unitary(std::vector<int> targets, std::vector<int> controls,
                                 std::shared_ptr<const Eigen::MatrixXcd> unitary) {
    gates_.push_back(
        {GateKind::ControlledUnitary, std::move(targets), std::move(controls), 0.0,
         std::move(unitary), {}});
}
void Circuit::select_ry(int ancilla, std::vector<int> selector,
                        std::shared_ptr<const std::vector<double>> angles) {
    gates_.push_back(
        {GateKind::SelectRY, {ancilla}, std::move(selector), 0.0, {}, std::move(angles)});
}

void Circuit::qft(const std::vector<int>& qubits, bool inverse) {
    const int m = static_cast<int>(qubits.size());
    const double sign = inverse ? -1.0 : 1.0;
    auto swap_pair = [&](int a, int b) {
        cnot(a, b);
        cnot(b, a);
        cnot(a, b);
    };
    if (!inverse) {
        for (int j = m - 1; j >= 0; --j) {
            h(qubits[j]);
            for (int i = j - 1; i >= 0; --i)
                cphase(qubits[i], qubits[j], sign * std::numbers::pi / (1 << (j - i)));
        }
        for (int i = 0; i < m / 2; ++i) swap_pair(qubits[i], qubits[m - 1 - i]);
    } else {
        for (int i = 0; i < m / 2; ++i) swap_pair(qubits[i], qubits[m - 1 - i]);
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < j; ++i)
                cphase(qubits[i], qubits[j], sign * std::numbers::pi / (1 << (j - i)));
            h(qubits[j]);
        }
    }
}

void Circuit::run(StateVector& state, const NoiseModel& noise, Rng& rng) const {
    if (state.qubit_count() != qubits_)
        throw std::invalid_argument("Circuit::run: qubit count mismatch");
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::uniform_int_distribution<int> pauli(0, 2);
    for (const auto& g : gates_) {
        switch (g.kind) {
            case GateKind::RY: state.apply_ry(g.targets[0], g.angle); break;
            case GateKind::CNOT: state.apply_cnot(g.controls[0], g.targets[0]); break;
            case GateKind::CZ: state.apply_cz(g.targets[0], g.targets[1]); break;
            case GateKind::H: state.apply_h(g.targets[0]); break;
            case GateKind::X: state.apply_x(g.targets[0]); break;
            case GateKind::CPhase:
                state.apply_cphase(g.controls[0], g.targets[0], g.angle);
                break;
            case GateKind::ControlledUnitary:
                state.apply_controlled_unitary(g.targets, g.controls, *g.unitary);
                break;
            case GateKind::SelectRY:
                state.apply_select_ry(g.targets[0], g.controls, *g.angles);
                break;
        }
        if (noise.enabled() && noise.noisy_kinds.count(g.kind)) {
            for (int q : g.targets)
                if (uniform(rng) < noise.probability) state.apply_pauli(q, pauli(rng));
        }
    }
}

void Circuit::run(StateVector& state) const {
    NoiseModel none;
    Rng rng(0);
    run(state, none, rng);
}

void Circuit::dump(std::ostream& os) const {
    for (const auto& g : gates_) {
        os << gate_name(g.kind) << " t=";
        for (size_t i = 0; i < g.targets.size(); ++i) os << (i ? "," : "") << g.targets[i];
        os << " c=";
        for (size_t i = 0; i < g.controls.size(); ++i) os << (i ? "," : "") << g.controls[i];
        if (g.kind == GateKind::RY || g.kind == GateKind::CPhase) os << " angle=" << g.angle;
        os << "\n";
    }
}

} // namespace efh
