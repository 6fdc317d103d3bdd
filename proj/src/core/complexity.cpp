#include "complexity.hpp"

#include <cmath>
#include <stdexcept>

namespace efh {

ComplexityKind complexity_kind_from_name(const std::string& name) {
    if (name == "hhl-single") return ComplexityKind::HhlSingle;
    if (name == "vqls-single") return ComplexityKind::VqlsSingle;
    if (name == "hybrid-hhl") return ComplexityKind::HybridHhl;
    if (name == "hybrid-vqls") return ComplexityKind::HybridVqls;
    throw std::invalid_argument("unknown complexity kind: " + name);
}

const char* complexity_kind_name(ComplexityKind kind) {
    switch (kind) {
        case ComplexityKind::HhlSingle: return "hhl-single";
        case ComplexityKind::VqlsSingle: return "vqls-single";
        case ComplexityKind::HybridHhl: return "hybrid-hhl";
        case ComplexityKind::HybridVqls: return "hybrid-vqls";
    }
    return "?";
}

double predict_complexity(ComplexityKind kind, double n_unknowns, const ComplexityParams& p) {
    if (n_unknowns < 2.0) throw std::invalid_argument("predict_complexity: N must be >= 2");
    const double log_n = std::log(n_unknowns);
    const double polylog_n = log_n * log_n;
    switch (kind) {
        case ComplexityKind::HhlSingle: return p.kappa * p.kappa * log_n / p.xi_hhl;
        case ComplexityKind::VqlsSingle: return p.kappa * polylog_n * std::log(1.0 / p.xi_vqls);
        case ComplexityKind::HybridHhl:
        case ComplexityKind::HybridVqls: {
            const double exterior = p.kappa * std::log(p.xi_ext) /
                                    (p.subspace_dim * std::log(p.xi_int));
            const double build = n_unknowns * p.subspace_dim;
            const double log_sub = std::log(p.subspace_dim);
            const double xi_int4 = std::pow(p.xi_int, 4);
            const double inner =
                kind == ComplexityKind::HybridHhl
                    ? p.kappa_sub * p.kappa_sub * log_sub / (xi_int4 * p.xi_hhl)
                    : p.kappa_sub * log_sub * log_sub * std::log(1.0 / p.xi_vqls) / xi_int4;
            return exterior * (build + inner);
        }
    }
    throw std::logic_error("predict_complexity: unknown kind");
}

} // namespace efh
