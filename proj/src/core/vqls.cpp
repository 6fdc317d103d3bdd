#include "vqls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "errors.hpp"
#include "qalgo.hpp"

namespace efh {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

struct CostParts {
    double numerator;   ///< |<f_hat | C x>|^2
    double denominator; ///< ||C x||^2
    double cost() const { return 1.0 - numerator / denominator; }
};

class CostEvaluator {
public:
    CostEvaluator(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs,
                  const VqlsOptions& options, const NoiseModel& noise, int qubits)
        : matrix_(matrix), f_hat_(rhs / rhs.norm()), options_(options), noise_(noise),
          qubits_(qubits) {}

    StateVector run_ansatz(const std::vector<double>& params, Rng& rng) const {
        Circuit c = vqls_ansatz(qubits_, options_.layers, params);
        StateVector state(qubits_);
        c.run(state, noise_, rng);
        return state;
    }

    CostParts evaluate(const std::vector<double>& params, Rng& rng) const {
        const StateVector state = run_ansatz(params, rng);
        const auto& amp = state.amplitudes();
        Eigen::VectorXcd x(amp.size());
        for (std::size_t i = 0; i < amp.size(); ++i) x(i) = amp[i];
        const Eigen::VectorXcd cx = matrix_.cast<Amplitude>() * x;
        const double denom = cx.squaredNorm();
        if (denom <= 0.0) return {0.0, 1e-300};
        const Amplitude overlap = f_hat_.cast<Amplitude>().dot(cx);
        double numer = std::norm(overlap);

        if (options_.shots > 0) {
            // Sampled overlap test: draw the success frequency of the exact
            // probability instead of using it directly.
            const double p = std::clamp(numer / denom, 0.0, 1.0);
            std::binomial_distribution<int> bin(options_.shots, p);
            numer = denom * double(bin(rng)) / double(options_.shots);
        }
        return {numer, denom};
    }

private:
    const Eigen::MatrixXd& matrix_;
    Eigen::VectorXd f_hat_;
    const VqlsOptions& options_;
    const NoiseModel& noise_;
    int qubits_;
};

} // namespace

int vqls_parameter_count(int qubits, int layers) { return (layers + 1) * qubits; }

int vqls_total_qubits(int dim) { return qubits_for_dimension(dim); }

Circuit vqls_ansatz(int qubits, int layers, const std::vector<double>& parameters) {
    if (parameters.size() != static_cast<std::size_t>(vqls_parameter_count(qubits, layers)))
        throw std::invalid_argument("vqls_ansatz: parameter count mismatch");
    Circuit c(qubits);
    int p = 0;
    for (int layer = 0; layer < layers; ++layer) {
        for (int q = 0; q < qubits; ++q) c.ry(q, parameters[p++]);
        for (int q = 0; q + 1 < qubits; ++q) c.cnot(q, q + 1);
    }
    for (int q = 0; q < qubits; ++q) c.ry(q, parameters[p++]);
    return c;
}

VqlsResult vqls_solve(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs,
                      const VqlsOptions& options, const NoiseModel& noise, Rng& rng,
                      const std::vector<double>* initial_parameters) {
    const int dim = static_cast<int>(matrix.rows());
    if (!is_power_of_two(dim))
        throw std::invalid_argument("vqls_solve: dimension must be a power of two (pad first)");
    if (rhs.norm() <= 0.0) throw std::invalid_argument("vqls_solve: zero right-hand side");
    if (options.cost_threshold <= 0.0)
        throw std::invalid_argument("vqls_solve: cost threshold must be positive");

    const int qubits = vqls_total_qubits(dim);
    const int n_params = vqls_parameter_count(qubits, options.layers);
    const CostEvaluator eval(matrix, rhs, options, noise, qubits);
    std::uniform_real_distribution<double> init_angle(-std::numbers::pi, std::numbers::pi);

    VqlsResult result;
    result.total_qubits = qubits;
    result.cost = std::numeric_limits<double>::infinity();

    std::vector<double> theta(n_params), shifted(n_params), grad(n_params);
    constexpr double kShift = std::numbers::pi / 2.0;
    constexpr int kStagnationWindow = 30;

    int iterations = 0;
    for (int restart = 0; restart <= options.restarts && iterations < options.max_iterations;
         ++restart) {
        if (restart == 0 && initial_parameters && !initial_parameters->empty()) {
            if (initial_parameters->size() != static_cast<std::size_t>(n_params))
                throw std::invalid_argument("vqls_solve: warm-start parameter count mismatch");
            theta = *initial_parameters;
        } else {
            for (auto& t : theta) t = init_angle(rng);
        }

        double run_best = std::numeric_limits<double>::infinity();
        int stagnant = 0;
        while (iterations < options.max_iterations) {
            const CostParts center = eval.evaluate(theta, rng);
            const double cost = center.cost();
            ++iterations;

            if (cost < result.cost) {
                result.cost = cost;
                result.parameters = theta;
            }

            // Parameter-shift gradients of numerator and denominator, then the
            // quotient rule; exact on the noiseless simulator.
            double grad_norm_sq = 0.0;
            for (int p = 0; p < n_params; ++p) {
                shifted = theta;
                shifted[p] = theta[p] + kShift;
                const CostParts plus = eval.evaluate(shifted, rng);
                shifted[p] = theta[p] - kShift;
                const CostParts minus = eval.evaluate(shifted, rng);
                const double dn = 0.5 * (plus.numerator - minus.numerator);
                const double dd = 0.5 * (plus.denominator - minus.denominator);
                grad[p] = -(dn * center.denominator - center.numerator * dd) /
                          (center.denominator * center.denominator);
                grad_norm_sq += grad[p] * grad[p];
            }
            result.trace.push_back({iterations, cost, std::sqrt(grad_norm_sq)});

            if (cost <= options.cost_threshold) {
                result.converged = true;
                break;
            }
            if (cost < run_best - 1e-9) {
                run_best = cost;
                stagnant = 0;
            } else if (++stagnant >= kStagnationWindow) {
                break; // restart from fresh angles
            }
            for (int p = 0; p < n_params; ++p) theta[p] -= options.learning_rate * grad[p];
        }
        if (result.converged) break;
    }
    result.iterations = iterations;

    // Final state at the best angles. Under noise a trajectory can come back
    // globally imaginary (an odd number of Y errors); rerun a few times before
    // giving up.
    for (int attempt = 0;; ++attempt) {
        const StateVector state = eval.run_ansatz(result.parameters, rng);
        try {
            result.solution_direction = extract_classical(state, dim, &result.imag_residue);
            break;
        } catch (const NumericError&) {
            if (attempt >= 4) throw;
        }
    }
    return result;
}

} // namespace efh
