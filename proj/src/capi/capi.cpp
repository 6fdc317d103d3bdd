#include "efh.h"

#include <Eigen/LU>
#include <cstring>
#include <exception>
#include <fstream>
#include <string>

#include "core/complexity.hpp"
#include "core/errors.hpp"
#include "core/farfield.hpp"
#include "core/hybrid.hpp"
#include "core/mesh.hpp"
#include "core/pipeline.hpp"

namespace {

thread_local std::string g_last_error = "";

efh_status fail(efh_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
efh_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(EFH_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(EFH_ERR_INVALID_ARGUMENT, e.what());
    } catch (const efh::MeshError& e) {
        return fail(EFH_ERR_MESH, e.what());
    } catch (const efh::IoError& e) {
        return fail(EFH_ERR_IO, e.what());
    } catch (const efh::NumericError& e) {
        return fail(EFH_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(EFH_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(EFH_ERR_INTERNAL, "unknown error");
    }
}

} // namespace

struct efh_mesh {
    efh::TriangleMesh mesh;
    efh::RwgBasisSet rwg;
};

struct efh_system {
    efh::TriangleMesh mesh;
    efh::RwgBasisSet rwg;
    efh::BackgroundMedium medium;
    efh::PlaneWave wave;
    efh::ComplexSystem complex_system;
    efh::RealSystem real_system;
    int quadrature_points = 4;
};

struct efh_result {
    Eigen::VectorXd x;
    Eigen::VectorXcd currents;
    efh::SolveReport report;
};

struct efh_sweep {
    efh::RcsSweep sweep;
};

extern "C" {

const char* efh_version(void) { return "0.1.0"; }

const char* efh_last_error(void) { return g_last_error.c_str(); }

efh_status efh_mesh_load(const char* path, efh_mesh** out) {
    if (!path || !out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto m = new efh_mesh;
        try {
            m->mesh = efh::load_mesh(path);
            m->rwg = efh::build_rwg(m->mesh);
        } catch (...) {
            delete m;
            throw;
        }
        *out = m;
        return EFH_OK;
    });
}

efh_status efh_mesh_sphere(double radius_m, int subdivision_level, efh_mesh** out) {
    if (!out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto m = new efh_mesh;
        try {
            m->mesh = efh::generate_sphere(radius_m, subdivision_level);
            m->rwg = efh::build_rwg(m->mesh);
        } catch (...) {
            delete m;
            throw;
        }
        *out = m;
        return EFH_OK;
    });
}

efh_status efh_mesh_sphere_uv(double radius_m, int meridians, int rings, efh_mesh** out) {
    if (!out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto m = new efh_mesh;
        try {
            m->mesh = efh::generate_sphere_uv(radius_m, meridians, rings);
            m->rwg = efh::build_rwg(m->mesh);
        } catch (...) {
            delete m;
            throw;
        }
        *out = m;
        return EFH_OK;
    });
}

efh_status efh_mesh_save(const efh_mesh* mesh, const char* path) {
    if (!mesh || !path) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        efh::save_mesh(mesh->mesh, path);
        return EFH_OK;
    });
}

void efh_mesh_free(efh_mesh* mesh) { delete mesh; }

int efh_mesh_vertex_count(const efh_mesh* mesh) { return mesh ? mesh->mesh.vertex_count() : 0; }
int efh_mesh_triangle_count(const efh_mesh* mesh) { return mesh ? mesh->mesh.triangle_count() : 0; }
int efh_mesh_edge_count(const efh_mesh* mesh) { return mesh ? mesh->mesh.edge_count() : 0; }
int efh_mesh_rwg_count(const efh_mesh* mesh) { return mesh ? mesh->rwg.size() : 0; }
double efh_mesh_total_area(const efh_mesh* mesh) { return mesh ? mesh->mesh.total_area() : 0.0; }

efh_status efh_system_assemble(const efh_mesh* mesh, double frequency_hz,
                               double amplitude_v_per_m, int quadrature_points, efh_system** out) {
    if (!mesh || !out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto s = new efh_system;
        try {
            s->mesh = mesh->mesh;
            s->rwg = mesh->rwg;
            s->quadrature_points = quadrature_points;
            s->wave.frequency = frequency_hz;
            s->wave.amplitude = amplitude_v_per_m;
            const efh::AssemblyOptions opts{quadrature_points, 7};
            s->complex_system.impedance =
                efh::assemble_impedance(s->mesh, s->rwg, s->medium, frequency_hz, opts);
            s->complex_system.excitation = efh::assemble_excitation(s->mesh, s->rwg, s->wave, opts);
            s->real_system = efh::realify(s->complex_system);
        } catch (...) {
            delete s;
            throw;
        }
        *out = s;
        return EFH_OK;
    });
}

void efh_system_free(efh_system* system) { delete system; }
int efh_system_edge_count(const efh_system* system) {
    return system ? system->complex_system.size() : 0;
}
int efh_system_unknowns(const efh_system* system) {
    return system ? system->real_system.size() : 0;
}

void efh_solve_options_init(efh_solve_options* options) {
    if (!options) return;
    std::memset(options, 0, sizeof(*options));
    const efh::HybridConfig d;
    options->inner_solver = EFH_INNER_QR;
    options->preconditioner = EFH_PRECOND_ILUT;
    options->ilut_drop_tolerance = d.ilut_drop_tolerance;
    options->exterior_threshold = d.exterior_threshold;
    options->interior_threshold = d.interior_threshold;
    options->subspace_dim = d.subspace_dim;
    options->max_exterior = d.max_exterior;
    options->max_interior = d.max_interior;
    options->relative_residuals = d.relative_residuals ? 1 : 0;
    options->estimate_condition = d.estimate_condition ? 1 : 0;
    options->hhl_clock_qubits = d.hhl.clock_qubits;
    options->hhl_evolution_time = d.hhl.evolution_time;
    options->hhl_rotation_constant = d.hhl.rotation_constant;
    options->hhl_max_attempts = d.hhl.max_attempts;
    options->vqls_layers = d.vqls.layers;
    options->vqls_cost_threshold = d.vqls.cost_threshold;
    options->vqls_max_iterations = d.vqls.max_iterations;
    options->vqls_learning_rate = d.vqls.learning_rate;
    options->vqls_restarts = d.vqls.restarts;
    options->vqls_shots = d.vqls.shots;
    options->noise_probability = d.noise.probability;
    options->seed = d.seed;
}

namespace {

efh::HybridConfig to_hybrid_config(const efh_solve_options& o) {
    efh::HybridConfig c;
    switch (o.inner_solver) {
        case EFH_INNER_QR: c.inner = efh::InnerSolver::QR; break;
        case EFH_INNER_HHL: c.inner = efh::InnerSolver::HHL; break;
        case EFH_INNER_VQLS: c.inner = efh::InnerSolver::VQLS; break;
        default: throw std::invalid_argument("unknown inner solver");
    }
    switch (o.preconditioner) {
        case EFH_PRECOND_IDENTITY: c.preconditioner = efh::PreconditionerKind::Identity; break;
        case EFH_PRECOND_ILUT: c.preconditioner = efh::PreconditionerKind::Ilut; break;
        default: throw std::invalid_argument("unknown preconditioner");
    }
    c.ilut_drop_tolerance = o.ilut_drop_tolerance;
    c.exterior_threshold = o.exterior_threshold;
    c.interior_threshold = o.interior_threshold;
    c.subspace_dim = o.subspace_dim;
    c.max_exterior = o.max_exterior;
    c.max_interior = o.max_interior;
    c.relative_residuals = o.relative_residuals != 0;
    c.estimate_condition = o.estimate_condition != 0;
    c.hhl.clock_qubits = o.hhl_clock_qubits;
    c.hhl.evolution_time = o.hhl_evolution_time;
    c.hhl.rotation_constant = o.hhl_rotation_constant;
    c.hhl.max_attempts = o.hhl_max_attempts;
    c.vqls.layers = o.vqls_layers;
    c.vqls.cost_threshold = o.vqls_cost_threshold;
    c.vqls.max_iterations = o.vqls_max_iterations;
    c.vqls.learning_rate = o.vqls_learning_rate;
    c.vqls.restarts = o.vqls_restarts;
    c.vqls.shots = o.vqls_shots;
    c.noise.probability = o.noise_probability;
    c.seed = o.seed;
    return c;
}

} // namespace

efh_status efh_solve(const efh_system* system, const efh_solve_options* options,
                     efh_result** out) {
    if (!system || !options || !out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> efh_status {
        const efh::HybridConfig cfg = to_hybrid_config(*options);
        efh::HybridSolution sol = efh::hybrid_solve(system->real_system, cfg);
        auto r = new efh_result;
        r->x = std::move(sol.x);
        r->report = std::move(sol.report);
        r->currents = efh::complexify_solution(r->x, system->complex_system.size());
        *out = r;
        if (!r->report.converged)
            return fail(EFH_ERR_NO_CONVERGENCE, "hybrid solve hit the iteration cap");
        return EFH_OK;
    });
}

efh_status efh_direct_solve(const efh_system* system, efh_result** out) {
    if (!system || !out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto r = new efh_result;
        try {
            r->x = Eigen::PartialPivLU<Eigen::MatrixXd>(system->real_system.matrix)
                       .solve(system->real_system.rhs);
            r->currents = efh::complexify_solution(r->x, system->complex_system.size());
            r->report.converged = true;
            r->report.inner_name = "direct";
            r->report.preconditioner_name = "none";
            const Eigen::VectorXd res = system->real_system.rhs -
                                        system->real_system.matrix * r->x;
            r->report.final_residual = res.norm() / system->real_system.rhs.norm();
        } catch (...) {
            delete r;
            throw;
        }
        *out = r;
        return EFH_OK;
    });
}

void efh_result_free(efh_result* result) { delete result; }

int efh_result_converged(const efh_result* r) { return r && r->report.converged ? 1 : 0; }
int efh_result_exterior_iterations(const efh_result* r) {
    return r ? r->report.exterior_iterations : 0;
}
long long efh_result_interior_iterations(const efh_result* r) {
    return r ? r->report.interior_iterations_global : 0;
}
int efh_result_qubits(const efh_result* r) { return r ? r->report.quantum_qubits : 0; }
double efh_result_final_residual(const efh_result* r) { return r ? r->report.final_residual : 0; }
double efh_result_condition_estimate(const efh_result* r) {
    return r ? r->report.condition_estimate : 0;
}
double efh_result_subspace_condition_mean(const efh_result* r) {
    return r ? r->report.subspace_condition_mean : 0;
}
double efh_result_time_subspace_build(const efh_result* r) {
    return r ? r->report.time_subspace_build : 0;
}
double efh_result_time_inner_iteration(const efh_result* r) {
    return r ? r->report.time_inner_iteration : 0;
}
double efh_result_time_total(const efh_result* r) { return r ? r->report.time_total : 0; }

efh_status efh_result_solution(const efh_result* result, double* x, int capacity) {
    if (!result || !x) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    if (capacity < result->x.size())
        return fail(EFH_ERR_INVALID_ARGUMENT, "solution buffer too small");
    for (int i = 0; i < result->x.size(); ++i) x[i] = result->x(i);
    return EFH_OK;
}

efh_status efh_result_write_report(const efh_result* result, const char* path) {
    if (!result || !path) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::ofstream out(path);
        if (!out) throw efh::IoError(std::string("cannot write ") + path);
        result->report.write_text(out);
        return EFH_OK;
    });
}

efh_status efh_result_write_residual_csv(const efh_result* result, const char* path) {
    if (!result || !path) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::ofstream out(path);
        if (!out) throw efh::IoError(std::string("cannot write ") + path);
        result->report.write_residual_csv(out);
        return EFH_OK;
    });
}

efh_status efh_result_write_currents_csv(const efh_result* result, const efh_system* system,
                                         const char* path) {
    if (!result || !system || !path) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto samples = efh::surface_currents(result->currents, system->mesh, system->rwg);
        std::ofstream out(path);
        if (!out) throw efh::IoError(std::string("cannot write ") + path);
        out << "triangle,cx,cy,cz,magnitude\n";
        for (std::size_t t = 0; t < samples.size(); ++t)
            out << t << "," << samples[t].centroid.x << "," << samples[t].centroid.y << ","
                << samples[t].centroid.z << "," << samples[t].magnitude << "\n";
        return EFH_OK;
    });
}

efh_status efh_rcs_sweep(const efh_system* system, const efh_result* result,
                         double theta_step_deg, efh_sweep** out) {
    if (!system || !result || !out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto s = new efh_sweep;
        try {
            s->sweep = efh::rcs_sweep(result->currents, system->mesh, system->rwg, system->medium,
                                      system->wave.frequency, theta_step_deg,
                                      system->wave.amplitude, system->quadrature_points);
            s->sweep.solver_id = result->report.inner_name;
        } catch (...) {
            delete s;
            throw;
        }
        *out = s;
        return EFH_OK;
    });
}

efh_status efh_mie_sweep(double radius_m, double frequency_hz, double theta_step_deg,
                         efh_sweep** out) {
    if (!out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto s = new efh_sweep;
        try {
            s->sweep = efh::mie_sweep(radius_m, efh::BackgroundMedium{}, frequency_hz,
                                      theta_step_deg);
        } catch (...) {
            delete s;
            throw;
        }
        *out = s;
        return EFH_OK;
    });
}

void efh_sweep_free(efh_sweep* sweep) { delete sweep; }

int efh_sweep_size(const efh_sweep* sweep) {
    return sweep ? static_cast<int>(sweep->sweep.theta_deg.size()) : 0;
}

efh_status efh_sweep_values(const efh_sweep* sweep, double* theta_deg, double* sigma_m2,
                            int capacity) {
    if (!sweep || !theta_deg || !sigma_m2) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    const int n = static_cast<int>(sweep->sweep.theta_deg.size());
    if (capacity < n) return fail(EFH_ERR_INVALID_ARGUMENT, "sweep buffer too small");
    for (int i = 0; i < n; ++i) {
        theta_deg[i] = sweep->sweep.theta_deg[i];
        sigma_m2[i] = sweep->sweep.sigma_m2[i];
    }
    return EFH_OK;
}

efh_status efh_sweep_write_csv(const efh_sweep* sweep, const char* path) {
    if (!sweep || !path) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        efh::write_sweep_csv(sweep->sweep, path);
        return EFH_OK;
    });
}

efh_status efh_rcs_delta(const efh_sweep* test, const efh_sweep* reference, double* delta) {
    if (!test || !reference || !delta) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *delta = efh::rcs_relative_error(test->sweep, reference->sweep);
        return EFH_OK;
    });
}

void efh_complexity_params_init(efh_complexity_params* params) {
    if (!params) return;
    const efh::ComplexityParams d;
    params->kappa = d.kappa;
    params->kappa_sub = d.kappa_sub;
    params->subspace_dim = d.subspace_dim;
    params->xi_ext = d.xi_ext;
    params->xi_int = d.xi_int;
    params->xi_hhl = d.xi_hhl;
    params->xi_vqls = d.xi_vqls;
}

efh_status efh_predict_complexity(int kind, double n_unknowns,
                                  const efh_complexity_params* params, double* out) {
    if (!params || !out) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        efh::ComplexityParams p;
        p.kappa = params->kappa;
        p.kappa_sub = params->kappa_sub;
        p.subspace_dim = params->subspace_dim;
        p.xi_ext = params->xi_ext;
        p.xi_int = params->xi_int;
        p.xi_hhl = params->xi_hhl;
        p.xi_vqls = params->xi_vqls;
        efh::ComplexityKind k;
        switch (kind) {
            case EFH_COMPLEXITY_HHL_SINGLE: k = efh::ComplexityKind::HhlSingle; break;
            case EFH_COMPLEXITY_VQLS_SINGLE: k = efh::ComplexityKind::VqlsSingle; break;
            case EFH_COMPLEXITY_HYBRID_HHL: k = efh::ComplexityKind::HybridHhl; break;
            case EFH_COMPLEXITY_HYBRID_VQLS: k = efh::ComplexityKind::HybridVqls; break;
            default: throw std::invalid_argument("unknown complexity kind");
        }
        *out = efh::predict_complexity(k, n_unknowns, p);
        return EFH_OK;
    });
}

efh_status efh_run_experiment(const char* experiment, const char* config_path,
                              const char* overrides, int* exit_code) {
    if (!experiment || !exit_code) return fail(EFH_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> efh_status {
        efh::KeyValueConfig kv;
        if (config_path && *config_path) kv = efh::KeyValueConfig::load(config_path);
        if (overrides && *overrides) {
            const efh::KeyValueConfig extra = efh::KeyValueConfig::parse(overrides);
            for (const auto& [k, v] : extra.values()) kv.set(k, v);
        }
        efh::RunConfig cfg;
        cfg.experiment = efh::experiment_kind_from_name(experiment);
        cfg.apply(kv);
        const efh::RunResult r = efh::run_experiment(cfg);
        *exit_code = r.exit_code;
        return EFH_OK;
    });
}

} // extern "C"
