#include "hhl.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "errors.hpp"
#include "qalgo.hpp"

namespace efh {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

int hhl_total_qubits(int dim, int clock_qubits) {
    return 1 + clock_qubits + qubits_for_dimension(dim);
}

HhlResult hhl_solve(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXd& rhs,
                    const HhlOptions& options, const NoiseModel& noise, Rng& rng) {
    const int n = static_cast<int>(hamiltonian.rows());
    if (!is_power_of_two(n))
        throw std::invalid_argument("hhl_solve: dimension must be a power of two (pad first)");
    const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    if ((hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("hhl_solve: matrix is not symmetric");
    if (rhs.norm() <= 0.0) throw std::invalid_argument("hhl_solve: zero right-hand side");
    if (options.clock_qubits < 1) throw std::invalid_argument("hhl_solve: clock_qubits must be >= 1");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian);
    const Eigen::VectorXd lambda = es.eigenvalues();
    const Eigen::MatrixXd basis = es.eigenvectors();
    const double lam_max = lambda.cwiseAbs().maxCoeff();
    const double lam_min = lambda.cwiseAbs().minCoeff();
    if (lam_min <= 1e-14 * lam_max) throw NumericError("hhl_solve: matrix is numerically singular");

    const double t =
        options.evolution_time > 0.0 ? options.evolution_time : std::numbers::pi / (1.05 * lam_max);
    if (lam_max * t / kTwoPi >= 0.5)
        throw NumericError("hhl_solve: phase wraparound, eigenvalue outside configured range");
    const double c_rot =
        options.rotation_constant > 0.0 ? options.rotation_constant : 0.9 * lam_min;

    const int io = qubits_for_dimension(n);
    const int m = options.clock_qubits;
    const int total = hhl_total_qubits(n, m);
    const int ancilla = io + m;
    std::vector<int> clock(m);
    for (int j = 0; j < m; ++j) clock[j] = io + j;
    std::vector<int> io_qubits(io);
    for (int q = 0; q < io; ++q) io_qubits[q] = q;

    // Controlled powers of e^{jHt} from the exact eigendecomposition.
    Circuit circuit(total);
    for (int j = 0; j < m; ++j) circuit.h(clock[j]);
    std::vector<std::shared_ptr<const Eigen::MatrixXcd>> powers(m);
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXcd phase(n);
        for (int i = 0; i < n; ++i)
            phase(i) = std::exp(Amplitude(0.0, lambda(i) * t * double(1LL << j)));
        auto u = std::make_shared<Eigen::MatrixXcd>(
            basis.cast<Amplitude>() * phase.asDiagonal() * basis.transpose().cast<Amplitude>());
        powers[j] = u;
        circuit.controlled_unitary(io_qubits, {clock[j]}, u);
    }
    circuit.qft(clock, /*inverse=*/true);

    // Eigenvalue inversion: two's-complement decode of the clock value.
    auto angles = std::make_shared<std::vector<double>>(std::size_t{1} << m, 0.0);
    for (std::size_t c = 1; c < angles->size(); ++c) {
        double phi = double(c) / double(std::size_t{1} << m);
        if (phi >= 0.5) phi -= 1.0;
        const double lam = kTwoPi * phi / t;
        (*angles)[c] = 2.0 * std::asin(std::clamp(c_rot / lam, -1.0, 1.0));
    }
    circuit.select_ry(ancilla, clock, angles);

    // Uncompute phase estimation.
    circuit.qft(clock, /*inverse=*/false);
    for (int j = m - 1; j >= 0; --j) {
        auto u = std::make_shared<Eigen::MatrixXcd>(powers[j]->adjoint());
        circuit.controlled_unitary(io_qubits, {clock[j]}, u);
    }
    for (int j = m - 1; j >= 0; --j) circuit.h(clock[j]);

    // Initial state |g> on the io register, clock and ancilla at |0>.
    std::vector<Amplitude> init(std::size_t{1} << total, Amplitude(0.0, 0.0));
    const Eigen::VectorXd g = rhs / rhs.norm();
    for (int i = 0; i < n; ++i) init[i] = g(i);
    const StateVector prepared = StateVector::from_amplitudes(total, std::move(init));

    // Postselect ancilla = 1 and a refocused clock. Noiseless circuits are
    // deterministic, so the pre-measurement state is computed once and only
    // the measurements are resampled per attempt.
    StateVector evolved = prepared;
    if (!noise.enabled()) circuit.run(evolved, noise, rng);

    for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
        StateVector trial = noise.enabled() ? prepared : evolved;
        if (noise.enabled()) circuit.run(trial, noise, rng);
        if (trial.measure(ancilla, rng) != 1) continue;
        bool clock_zero = true;
        for (int j = 0; j < m && clock_zero; ++j)
            if (trial.measure(clock[j], rng) != 0) clock_zero = false;
        if (!clock_zero) continue;

        // After the collapse the support is ancilla = 1, clock = 0: indices
        // offset + i with i indexing the io register.
        std::vector<Amplitude> io_amp(std::size_t{1} << io);
        const std::size_t offset = std::size_t{1} << ancilla;
        for (int i = 0; i < (1 << io); ++i) io_amp[i] = trial.amplitude(offset + std::size_t(i));
        StateVector io_state = StateVector::from_amplitudes(io, std::move(io_amp));

        HhlResult result;
        result.attempts = attempt;
        result.total_qubits = total;
        result.solution_direction = extract_classical(io_state, n, &result.imag_residue);
        return result;
    }
    throw NumericError("hhl_solve: postselection failed after " +
                       std::to_string(options.max_attempts) + " attempts");
}

} // namespace efh
