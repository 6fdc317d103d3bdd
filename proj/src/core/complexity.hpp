#pragma once

#include <string>

namespace efh {

enum class ComplexityKind { HhlSingle, VqlsSingle, HybridHhl, HybridVqls };

ComplexityKind complexity_kind_from_name(const std::string& name);
const char* complexity_kind_name(ComplexityKind kind);

/// Symbols of the asymptotic cost models.
struct ComplexityParams {
    double kappa = 1.0;          ///< condition number of the (preconditioned) system
    double kappa_sub = 1.0;      ///< average subspace condition number
    double subspace_dim = 32.0;  ///< N_sub
    double xi_ext = 1e-3;
    double xi_int = 1e-3;
    double xi_hhl = 1e-3;
    double xi_vqls = 1e-3;
};

/// Evaluate the asymptotic cost formula literally, in arbitrary units; only
/// curve shapes are meaningful. polylog(x) is interpreted as log^2(x), which
/// the CLI records in output metadata.
///
///   HHL single:   kappa^2 log(N) / xi_hhl
///   VQLS single:  kappa log^2(N) log(1/xi_vqls)
///   hybrid HHL:   R * (N N_sub + kappa_sub^2 log(N_sub) / (xi_int^4 xi_hhl))
///   hybrid VQLS:  R * (N N_sub + kappa_sub log^2(N_sub) log(1/xi_vqls) / xi_int^4)
/// with the exterior-count factor R = kappa log(xi_ext) / (N_sub log(xi_int)).
double predict_complexity(ComplexityKind kind, double n_unknowns, const ComplexityParams& params);

} // namespace efh
