#include "hybrid.hpp"

#include <Eigen/QR>
#include <chrono>
#include <cmath>
#include <ostream>

#include "condest.hpp"
#include "errors.hpp"
#include "qalgo.hpp"
#include "subspace.hpp"

namespace efh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

const char* inner_solver_name(InnerSolver s) {
    switch (s) {
        case InnerSolver::QR: return "qr";
        case InnerSolver::HHL: return "hhl";
        case InnerSolver::VQLS: return "vqls";
    }
    return "?";
}

const char* preconditioner_name(PreconditionerKind p) {
    return p == PreconditionerKind::Identity ? "identity" : "ilut";
}

Eigen::VectorXd inner_solve_dispatch(const Eigen::MatrixXd& projected, const Eigen::VectorXd& f,
                                     const HybridConfig& cfg, Rng& rng,
                                     std::vector<double>* warm_start, SolveReport* stats) {
    if (f.norm() <= 0.0) throw std::invalid_argument("inner_solve_dispatch: zero residual");
    const int k = static_cast<int>(projected.rows());

    switch (cfg.inner) {
        case InnerSolver::QR: {
            const Eigen::VectorXd z = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(projected).solve(f);
            const double n = z.norm();
            if (n <= 0.0) throw NumericError("inner_solve_dispatch: QR produced a zero solution");
            return z / n;
        }
        case InnerSolver::HHL: {
            auto [h, g] = hermitian_dilation(projected, f);
            auto [hp, gp] = pad_pow2(h, g);
            const HhlResult r = hhl_solve(hp, gp, cfg.hhl, cfg.noise, rng);
            if (stats) {
                stats->quantum_qubits = std::max(stats->quantum_qubits, r.total_qubits);
                stats->inner_cost_evaluations += r.attempts;
            }
            // The dilated solution is [0; z]: keep the lower block.
            const Eigen::VectorXd lower = r.solution_direction.segment(k, k);
            const double n = lower.norm();
            if (n <= 1e-12)
                throw NumericError("inner_solve_dispatch: dilated solve returned an empty block");
            return lower / n;
        }
        case InnerSolver::VQLS: {
            auto [cp, fp] = pad_pow2(projected, f);
            const VqlsResult r = vqls_solve(cp, fp, cfg.vqls, cfg.noise, rng,
                                            warm_start && !warm_start->empty() ? warm_start
                                                                               : nullptr);
            if (warm_start) *warm_start = r.parameters;
            if (stats) {
                stats->quantum_qubits = std::max(stats->quantum_qubits, r.total_qubits);
                stats->inner_cost_evaluations += r.iterations;
                if (cfg.collect_vqls_trace) {
                    const int base = static_cast<int>(stats->vqls_trace.size());
                    for (const auto& p : r.trace)
                        stats->vqls_trace.push_back({base + p.iteration, p.cost, p.gradient_norm});
                }
            }
            const Eigen::VectorXd head = r.solution_direction.head(k);
            const double n = head.norm();
            if (n <= 1e-12)
                throw NumericError("inner_solve_dispatch: padded solve left the leading block");
            return head / n;
        }
    }
    throw std::logic_error("inner_solve_dispatch: unknown solver");
}

HybridSolution hybrid_solve(const RealSystem& system, const HybridConfig& cfg) {
    const int n = system.size();
    if (n < 1 || system.rhs.size() != n)
        throw std::invalid_argument("hybrid_solve: inconsistent dimensions");
    if (cfg.exterior_threshold <= 0.0 || cfg.interior_threshold <= 0.0)
        throw std::invalid_argument("hybrid_solve: thresholds must be positive");
    if (!is_power_of_two(cfg.subspace_dim))
        throw std::invalid_argument("hybrid_solve: subspace dimension must be a power of two");
    const int n_sub = std::min(cfg.subspace_dim, n);

    const auto t_start = Clock::now();
    HybridSolution out;
    SolveReport& rep = out.report;
    rep.inner_name = inner_solver_name(cfg.inner);
    rep.preconditioner_name = preconditioner_name(cfg.preconditioner);
    rep.residuals_relative = cfg.relative_residuals;

    // Step 1: preconditioned operator A~ = P^{-1} A as a composition; the
    // matrix itself is never formed.
    IluFactors factors;
    const bool use_ilut = cfg.preconditioner == PreconditionerKind::Ilut;
    if (use_ilut) factors = ilut(system.matrix, cfg.ilut_drop_tolerance);
    const LinearOp apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        Eigen::VectorXd av = system.matrix * v;
        return use_ilut ? factors.solve(av) : av;
    };
    const Eigen::VectorXd b_tilde = use_ilut ? factors.solve(system.rhs) : system.rhs;

    const double b_norm = b_tilde.norm();
    const double ext_scale = cfg.relative_residuals ? (b_norm > 0.0 ? b_norm : 1.0) : 1.0;

    Rng rng(cfg.seed);

    // Steps 2-3: zero initial guess, seed residual.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd residual = b_tilde;
    double alpha = residual.norm() / ext_scale;
    rep.exterior_residuals.push_back(alpha);

    double kappa_sub_sum = 0.0;
    std::vector<double> vqls_warm;

    // Step 4: exterior loop, one fresh subspace per step.
    while (alpha > cfg.exterior_threshold && rep.exterior_iterations < cfg.max_exterior) {
        const auto t_sub = Clock::now();
        const SubspaceSystem sub = build_subspace(apply, residual, n_sub);
        rep.time_subspace_build += seconds_since(t_sub);
        kappa_sub_sum += condition_estimate(sub.projected);
        vqls_warm.clear(); // dimension or residual changed; retrain from scratch

        const auto t_iter = Clock::now();
        Eigen::VectorXd y = Eigen::VectorXd::Zero(sub.achieved_dim);
        Eigen::VectorXd f = sub.rhs;
        const double int_scale = cfg.relative_residuals ? sub.residual_norm : 1.0;
        std::vector<double> betas;
        betas.push_back(f.norm() / int_scale);

        // Step 4.4: interior loop on the projected system.
        for (int i = 0; i < cfg.max_interior && betas.back() > cfg.interior_threshold; ++i) {
            Eigen::VectorXd direction;
            double scale = 0.0;
            try {
                direction = inner_solve_dispatch(sub.projected, f, cfg, rng, &vqls_warm, &rep);
                scale = recover_scale(sub.projected, f, direction);
            } catch (const NumericError&) {
                // Degenerate inner output (noise trajectory, annihilated
                // direction): fall back to the residual direction, which the
                // least-squares scale always turns into a descent step.
                direction = f / f.norm();
                scale = recover_scale(sub.projected, f, direction);
            }
            y += scale * direction;
            f -= scale * (sub.projected * direction);
            betas.push_back(f.norm() / int_scale);
        }
        rep.interior_residuals.push_back(std::move(betas));
        rep.time_inner_iteration += seconds_since(t_iter);

        // Steps 4.5-4.6: prolongate and recompute the exterior residual from
        // scratch so incremental drift cannot mask non-convergence.
        x += sub.prolongation * y;
        residual = b_tilde - apply(x);
        alpha = residual.norm() / ext_scale;
        rep.exterior_residuals.push_back(alpha);
        ++rep.exterior_iterations;
    }

    rep.converged = alpha <= cfg.exterior_threshold;
    rep.final_residual = alpha;
    long long interior_total = 0;
    for (const auto& betas : rep.interior_residuals)
        interior_total += static_cast<long long>(betas.size() - 1) + 1;
    rep.interior_iterations_global = interior_total > 0 ? interior_total - 1 : 0;
    rep.subspace_condition_mean =
        rep.exterior_iterations > 0 ? kappa_sub_sum / rep.exterior_iterations : 0.0;

    if (cfg.estimate_condition) {
        // Inverse of A~ = P^{-1} A is A^{-1} P; only invoked by the power
        // iteration fallback above the dense-spectrum size cutoff.
        Eigen::PartialPivLU<Eigen::MatrixXd> lu;
        if (n > 4096) lu.compute(system.matrix);
        const LinearOp inverse = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
            return lu.solve(use_ilut ? factors.multiply(v) : v);
        };
        rep.condition_estimate = condition_estimate(apply, inverse, n, cfg.seed);
    }

    out.x = std::move(x);
    rep.time_total = seconds_since(t_start);
    return out;
}

void SolveReport::write_text(std::ostream& os) const {
    os << "converged = " << (converged ? "yes" : "no") << "\n"
       << "inner_solver = " << inner_name << "\n"
       << "preconditioner = " << preconditioner_name << "\n"
       << "exterior_iterations = " << exterior_iterations << "\n"
       << "interior_iterations_global = " << interior_iterations_global << "\n"
       << "final_residual = " << final_residual << "\n"
       << "residual_mode = " << (residuals_relative ? "relative" : "absolute") << "\n"
       << "condition_estimate = " << condition_estimate << "\n"
       << "subspace_condition_mean = " << subspace_condition_mean << "\n"
       << "quantum_qubits = " << quantum_qubits << "\n"
       << "inner_cost_evaluations = " << inner_cost_evaluations << "\n"
       << "time_subspace_build_s = " << time_subspace_build << "\n"
       << "time_inner_iteration_s = " << time_inner_iteration << "\n"
       << "time_total_s = " << time_total << "\n";
}

void SolveReport::write_residual_csv(std::ostream& os) const {
    os << "layer,step,residual\n";
    for (std::size_t e = 0; e < exterior_residuals.size(); ++e)
        os << "exterior," << e << "," << exterior_residuals[e] << "\n";
    long long step = 0;
    for (const auto& betas : interior_residuals)
        for (double beta : betas) os << "interior," << step++ << "," << beta << "\n";
}

void SolveReport::write_vqls_trace_csv(std::ostream& os) const {
    os << "iteration,cost,gradient_norm\n";
    for (const auto& p : vqls_trace)
        os << p.iteration << "," << p.cost << "," << p.gradient_norm << "\n";
}

} // namespace efh
