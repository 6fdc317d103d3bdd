#include "statevector.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace efh {

namespace {
constexpr int kMaxQubits = 22;
constexpr double kInvSqrt2 = 0.70710678118654752440;
} // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > kMaxQubits)
        throw std::invalid_argument("StateVector: qubit count must be in [1, 22]");
    amp_.assign(std::size_t{1} << qubits, Amplitude(0.0, 0.0));
    amp_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(int qubits, std::vector<Amplitude> amplitudes) {
    StateVector s(qubits);
    if (amplitudes.size() != s.amp_.size())
        throw std::invalid_argument("StateVector: amplitude count mismatch");
    s.amp_ = std::move(amplitudes);
    const double n = s.norm();
    if (std::abs(n - 1.0) > 1e-10)
        throw std::invalid_argument("StateVector: amplitudes not normalized");
    return s;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= qubits_) throw std::invalid_argument("qubit index out of range");
}

void StateVector::apply_1q(int q, Amplitude u00, Amplitude u01, Amplitude u10, Amplitude u11) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t dim = amp_.size();
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
        for (std::size_t low = 0; low < bit; ++low) {
            const std::size_t i0 = base + low;
            const std::size_t i1 = i0 + bit;
            const Amplitude a0 = amp_[i0], a1 = amp_[i1];
            amp_[i0] = u00 * a0 + u01 * a1;
            amp_[i1] = u10 * a0 + u11 * a1;
        }
    }
}

void StateVector::apply_h(int q) {
    check_qubit(q);
    apply_1q(q, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
}

void StateVector::apply_x(int q) {
    check_qubit(q);
    apply_1q(q, 0.0, 1.0, 1.0, 0.0);
}

void StateVector::apply_ry(int q, double theta) {
    check_qubit(q);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    apply_1q(q, c, -s, s, c);
}

void StateVector::apply_pauli(int q, int which) {
    check_qubit(q);
    switch (which) {
        case 0: apply_1q(q, 0.0, 1.0, 1.0, 0.0); break;
        case 1: apply_1q(q, 0.0, Amplitude(0.0, -1.0), Amplitude(0.0, 1.0), 0.0); break;
        case 2: apply_1q(q, 1.0, 0.0, 0.0, -1.0); break;
        default: throw std::invalid_argument("apply_pauli: which must be 0, 1, or 2");
    }
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("apply_cnot: control equals target");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amp_.size(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
}

void StateVector::apply_cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw std::invalid_argument("apply_cz: identical qubits");
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amp_.size(); ++i)
        if ((i & mask) == mask) amp_[i] = -amp_[i];
}

void StateVector::apply_cphase(int control, int target, double phi) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("apply_cphase: identical qubits");
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    const Amplitude w = std::exp(Amplitude(0.0, phi));
    for (std::size_t i = 0; i < amp_.size(); ++i)
        if ((i & mask) == mask) amp_[i] *= w;
}

void StateVector::apply_controlled_unitary(const std::vector<int>& targets,
                                           const std::vector<int>& controls,
                                           const Eigen::MatrixXcd& unitary) {
    const int k = static_cast<int>(targets.size());
    if (k == 0 || k > qubits_) throw std::invalid_argument("controlled unitary: bad target count");
    const std::size_t block = std::size_t{1} << k;
    if (unitary.rows() != static_cast<Eigen::Index>(block) || unitary.cols() != unitary.rows())
        throw std::invalid_argument("controlled unitary: matrix size mismatch");
    const double defect =
        (unitary.adjoint() * unitary - Eigen::MatrixXcd::Identity(block, block))
            .cwiseAbs()
            .maxCoeff();
    if (defect > 1e-10) throw std::invalid_argument("controlled unitary: matrix is not unitary");

    std::size_t tmask = 0, cmask = 0;
    for (int q : targets) {
        check_qubit(q);
        tmask |= std::size_t{1} << q;
    }
    for (int q : controls) {
        check_qubit(q);
        cmask |= std::size_t{1} << q;
    }
    if (tmask & cmask) throw std::invalid_argument("controlled unitary: controls overlap targets");

    Eigen::VectorXcd in(block), out(block);
    std::vector<std::size_t> offsets(block);
    for (std::size_t s = 0; s < block; ++s) {
        std::size_t off = 0;
        for (int b = 0; b < k; ++b)
            if (s & (std::size_t{1} << b)) off |= std::size_t{1} << targets[b];
        offsets[s] = off;
    }

    // Iterate over all assignments of the non-target qubits.
    const std::size_t dim = amp_.size();
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & tmask) continue;              // base fixes target bits to 0
        if ((base & cmask) != cmask) continue;   // all controls must read 1
        for (std::size_t s = 0; s < block; ++s) in(s) = amp_[base | offsets[s]];
        out.noalias() = unitary * in;
        for (std::size_t s = 0; s < block; ++s) amp_[base | offsets[s]] = out(s);
    }
}

void StateVector::apply_select_ry(int ancilla, const std::vector<int>& selector,
                                  const std::vector<double>& angles) {
    check_qubit(ancilla);
    if (angles.size() != (std::size_t{1} << selector.size()))
        throw std::invalid_argument("apply_select_ry: angle table size mismatch");
    const std::size_t abit = std::size_t{1} << ancilla;
    std::vector<double> c(angles.size()), s(angles.size());
    for (std::size_t v = 0; v < angles.size(); ++v) {
        c[v] = std::cos(angles[v] / 2.0);
        s[v] = std::sin(angles[v] / 2.0);
    }
    const std::size_t dim = amp_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & abit) continue;
        std::size_t value = 0;
        for (std::size_t b = 0; b < selector.size(); ++b)
            if (i & (std::size_t{1} << selector[b])) value |= std::size_t{1} << b;
        const Amplitude a0 = amp_[i], a1 = amp_[i | abit];
        amp_[i] = c[value] * a0 - s[value] * a1;
        amp_[i | abit] = s[value] * a0 + c[value] * a1;
    }
}

int StateVector::measure(int q, Rng& rng) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    double p1 = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i)
        if (i & bit) p1 += std::norm(amp_[i]);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const int outcome = uniform(rng) < p1 ? 1 : 0;
    const double keep_prob = outcome ? p1 : 1.0 - p1;
    if (keep_prob <= 0.0) throw NumericError("measure: impossible branch selected");
    const double scale = 1.0 / std::sqrt(keep_prob);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        const bool is_one = (i & bit) != 0;
        if (is_one == static_cast<bool>(outcome))
            amp_[i] *= scale;
        else
            amp_[i] = 0.0;
    }
    return outcome;
}

Amplitude StateVector::inner_product(const StateVector& other) const {
    if (other.qubits_ != qubits_)
        throw std::invalid_argument("inner_product: qubit count mismatch");
    Amplitude s = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
    return s;
}

} // namespace efh
