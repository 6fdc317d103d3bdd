#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "efie.hpp"
#include "hhl.hpp"
#include "ilut.hpp"
#include "vqls.hpp"

namespace efh {

enum class InnerSolver { QR, HHL, VQLS };
enum class PreconditionerKind { Identity, Ilut };

const char* inner_solver_name(InnerSolver s);
const char* preconditioner_name(PreconditionerKind p);

/// Controls for the double-layer hybrid iteration.
struct HybridConfig {
    double exterior_threshold = 1e-3; ///< xi_ext
    double interior_threshold = 1e-3; ///< xi_int
    int subspace_dim = 32;            ///< N_sub, a power of two
    int max_exterior = 200;
    int max_interior = 50;            ///< per exterior step
    InnerSolver inner = InnerSolver::QR;
    PreconditionerKind preconditioner = PreconditionerKind::Ilut;
    double ilut_drop_tolerance = 1e-3;
    bool relative_residuals = true;   ///< thresholds against ||b~|| and ||d||
    bool estimate_condition = true;   ///< fill the kappa field of the report
    HhlOptions hhl;
    VqlsOptions vqls;
    NoiseModel noise;
    unsigned long long seed = 1;
    bool collect_vqls_trace = false; ///< gather per-iteration cost rows in the report
};

/// Everything observable about one hybrid solve.
struct SolveReport {
    bool converged = false;
    int exterior_iterations = 0;                    ///< N_ext, subspace builds performed
    long long interior_iterations_global = 0;       ///< sum_e (count_e + 1) - 1
    std::vector<double> exterior_residuals;         ///< alpha history, includes the seed value
    std::vector<std::vector<double>> interior_residuals; ///< beta history per exterior step
    double final_residual = 0.0;
    bool residuals_relative = true;
    double condition_estimate = 0.0;                ///< kappa of the preconditioned operator
    double subspace_condition_mean = 0.0;           ///< mean kappa(C) over exterior steps
    int quantum_qubits = 0;                         ///< qubits used by the inner solver (0 for QR)
    double time_subspace_build = 0.0;               ///< seconds in subspace construction
    double time_inner_iteration = 0.0;              ///< seconds in the interior loop
    double time_total = 0.0;
    std::string inner_name;
    std::string preconditioner_name;
    long long inner_cost_evaluations = 0;           ///< VQLS optimizer iterations, HHL attempts
    std::vector<VqlsTracePoint> vqls_trace;         ///< filled when collect_vqls_trace is set

    void write_text(std::ostream& os) const;
    void write_residual_csv(std::ostream& os) const;   ///< columns: layer,step,residual
    void write_vqls_trace_csv(std::ostream& os) const; ///< columns: iteration,cost,gradient_norm
};

struct HybridSolution {
    Eigen::VectorXd x;
    SolveReport report;
};

/// One interior inner solve: returns the unit direction z_hat for C z = f.
///   QR:   dense column-pivoted QR solve, normalized
///   HHL:  pad_pow2(hermitian_dilation(C, f)) -> hhl_solve -> lower block
///   VQLS: pad_pow2(C, f) -> vqls_solve -> truncation to the leading block
/// `warm_start` carries VQLS angles across interior steps.
Eigen::VectorXd inner_solve_dispatch(const Eigen::MatrixXd& projected, const Eigen::VectorXd& f,
                                     const HybridConfig& cfg, Rng& rng,
                                     std::vector<double>* warm_start = nullptr,
                                     SolveReport* stats = nullptr);

/// The double-layer iteration: precondition, project onto a fresh residual
/// subspace each exterior step, solve the small system iteratively with the
/// configured inner solver, prolongate, and recompute the exterior residual
/// from scratch. Never forms the preconditioned matrix explicitly.
HybridSolution hybrid_solve(const RealSystem& system, const HybridConfig& cfg);

} // namespace efh
