/* efh.h - C interface to the EFIE hybrid quantum-classical solver.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return EFH_OK on success; on failure they return an error code
 * and efh_last_error() carries a human-readable message for the calling
 * thread. Output handle arguments are untouched on failure.
 */
#ifndef EFH_H
#define EFH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum efh_status {
    EFH_OK = 0,
    EFH_ERR_INVALID_ARGUMENT = 1,
    EFH_ERR_IO = 2,
    EFH_ERR_MESH = 3,
    EFH_ERR_NUMERIC = 4,
    EFH_ERR_NO_CONVERGENCE = 5,
    EFH_ERR_INTERNAL = 6
} efh_status;

typedef enum efh_inner_solver {
    EFH_INNER_QR = 0,
    EFH_INNER_HHL = 1,
    EFH_INNER_VQLS = 2
} efh_inner_solver;

typedef enum efh_preconditioner {
    EFH_PRECOND_IDENTITY = 0,
    EFH_PRECOND_ILUT = 1
} efh_preconditioner;

typedef enum efh_complexity_kind {
    EFH_COMPLEXITY_HHL_SINGLE = 0,
    EFH_COMPLEXITY_VQLS_SINGLE = 1,
    EFH_COMPLEXITY_HYBRID_HHL = 2,
    EFH_COMPLEXITY_HYBRID_VQLS = 3
} efh_complexity_kind;

typedef struct efh_mesh efh_mesh;       /* triangulated surface + RWG basis */
typedef struct efh_system efh_system;   /* assembled EFIE system */
typedef struct efh_result efh_result;   /* solution vector + solve report */
typedef struct efh_sweep efh_sweep;     /* bistatic RCS cut */

const char* efh_version(void);
/* Message for the most recent failure on this thread; never NULL. */
const char* efh_last_error(void);

/* -- geometry -------------------------------------------------------- */

efh_status efh_mesh_load(const char* path, efh_mesh** out);
efh_status efh_mesh_sphere(double radius_m, int subdivision_level, efh_mesh** out);
efh_status efh_mesh_sphere_uv(double radius_m, int meridians, int rings, efh_mesh** out);
efh_status efh_mesh_save(const efh_mesh* mesh, const char* path);
void efh_mesh_free(efh_mesh* mesh);

int efh_mesh_vertex_count(const efh_mesh* mesh);
int efh_mesh_triangle_count(const efh_mesh* mesh);
int efh_mesh_edge_count(const efh_mesh* mesh);   /* undirected edges */
int efh_mesh_rwg_count(const efh_mesh* mesh);    /* RWG basis functions */
double efh_mesh_total_area(const efh_mesh* mesh);

/* -- assembly -------------------------------------------------------- */

/* Plane-wave excitation is x-polarized and travels in -z with the given
 * amplitude. quadrature_points must be one of 1, 3, 4, 7. */
efh_status efh_system_assemble(const efh_mesh* mesh, double frequency_hz,
                               double amplitude_v_per_m, int quadrature_points,
                               efh_system** out);
void efh_system_free(efh_system* system);
int efh_system_edge_count(const efh_system* system);
int efh_system_unknowns(const efh_system* system); /* N = 2 * edges */

/* -- solving --------------------------------------------------------- */

typedef struct efh_solve_options {
    int inner_solver;          /* efh_inner_solver */
    int preconditioner;        /* efh_preconditioner */
    double ilut_drop_tolerance;
    double exterior_threshold;
    double interior_threshold;
    int subspace_dim;          /* power of two */
    int max_exterior;
    int max_interior;
    int relative_residuals;    /* 0 = absolute thresholds */
    int estimate_condition;
    int hhl_clock_qubits;
    double hhl_evolution_time;     /* 0 = automatic */
    double hhl_rotation_constant;  /* 0 = automatic */
    int hhl_max_attempts;
    int vqls_layers;
    double vqls_cost_threshold;
    int vqls_max_iterations;
    double vqls_learning_rate;
    int vqls_restarts;
    int vqls_shots;            /* 0 = exact expectations */
    double noise_probability;  /* per-gate Pauli noise on RY and CNOT */
    unsigned long long seed;
} efh_solve_options;

void efh_solve_options_init(efh_solve_options* options);

/* Double-layer hybrid iteration. A capped, non-converged run returns
 * EFH_ERR_NO_CONVERGENCE but still produces a result handle. */
efh_status efh_solve(const efh_system* system, const efh_solve_options* options,
                     efh_result** out);
/* Dense LU reference solve of the same system. */
efh_status efh_direct_solve(const efh_system* system, efh_result** out);
void efh_result_free(efh_result* result);

int efh_result_converged(const efh_result* result);
int efh_result_exterior_iterations(const efh_result* result);
long long efh_result_interior_iterations(const efh_result* result);
int efh_result_qubits(const efh_result* result);
double efh_result_final_residual(const efh_result* result);
double efh_result_condition_estimate(const efh_result* result);
double efh_result_subspace_condition_mean(const efh_result* result);
double efh_result_time_subspace_build(const efh_result* result);
double efh_result_time_inner_iteration(const efh_result* result);
double efh_result_time_total(const efh_result* result);
/* Copies the length-N real solution into caller storage. */
efh_status efh_result_solution(const efh_result* result, double* x, int capacity);
efh_status efh_result_write_report(const efh_result* result, const char* path);
efh_status efh_result_write_residual_csv(const efh_result* result, const char* path);
efh_status efh_result_write_currents_csv(const efh_result* result, const efh_system* system,
                                         const char* path);

/* -- far field ------------------------------------------------------- */

efh_status efh_rcs_sweep(const efh_system* system, const efh_result* result,
                         double theta_step_deg, efh_sweep** out);
efh_status efh_mie_sweep(double radius_m, double frequency_hz, double theta_step_deg,
                         efh_sweep** out);
void efh_sweep_free(efh_sweep* sweep);
int efh_sweep_size(const efh_sweep* sweep);
efh_status efh_sweep_values(const efh_sweep* sweep, double* theta_deg, double* sigma_m2,
                            int capacity);
efh_status efh_sweep_write_csv(const efh_sweep* sweep, const char* path);
/* delta = ||test - ref||_2 / ||ref||_2 over linear samples. */
efh_status efh_rcs_delta(const efh_sweep* test, const efh_sweep* reference, double* delta);

/* -- experiments and models ------------------------------------------ */

typedef struct efh_complexity_params {
    double kappa;
    double kappa_sub;
    double subspace_dim;
    double xi_ext;
    double xi_int;
    double xi_hhl;
    double xi_vqls;
} efh_complexity_params;

void efh_complexity_params_init(efh_complexity_params* params);
/* Asymptotic cost model in arbitrary units; polylog is taken as log^2. */
efh_status efh_predict_complexity(int kind, double n_unknowns,
                                  const efh_complexity_params* params, double* out);

/* Run a full experiment from a config file (same format as the CLI), with
 * optional newline-separated "section.key=value" overrides. Returns the
 * experiment exit code through `exit_code`: 0 ok, 2 non-convergence. */
efh_status efh_run_experiment(const char* experiment, const char* config_path,
                              const char* overrides, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* EFH_H */
