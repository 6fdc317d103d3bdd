#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace efh {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw IoError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : std::stod(it->second);
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : std::stoi(it->second);
}

long long KeyValueConfig::get_int64(const std::string& key, long long fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : std::stoll(it->second);
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw IoError("config key " + key + ": expected a boolean, got '" + it->second + "'");
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
    if (name == "solve") return ExperimentKind::Solve;
    if (name == "rcs") return ExperimentKind::Rcs;
    if (name == "mie") return ExperimentKind::Mie;
    if (name == "bench") return ExperimentKind::Bench;
    if (name == "compare") return ExperimentKind::Compare;
    if (name == "case-table") return ExperimentKind::CaseTable;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

const char* experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Solve: return "solve";
        case ExperimentKind::Rcs: return "rcs";
        case ExperimentKind::Mie: return "mie";
        case ExperimentKind::Bench: return "bench";
        case ExperimentKind::Compare: return "compare";
        case ExperimentKind::CaseTable: return "case-table";
    }
    return "?";
}

void RunConfig::apply(const KeyValueConfig& cfg) {
    const std::string geom = cfg.get_string("geometry.kind", "");
    if (geom == "sphere")
        geometry = GeometryKind::Sphere;
    else if (geom == "uvsphere")
        geometry = GeometryKind::UvSphere;
    else if (geom == "mesh")
        geometry = GeometryKind::MeshFile;
    else if (!geom.empty())
        throw IoError("geometry.kind must be sphere, uvsphere, or mesh");
    radius = cfg.get_double("geometry.radius", radius);
    sphere_level = cfg.get_int("geometry.level", sphere_level);
    uv_meridians = cfg.get_int("geometry.meridians", uv_meridians);
    uv_rings = cfg.get_int("geometry.rings", uv_rings);
    mesh_path = cfg.get_string("geometry.path", mesh_path);

    frequency = cfg.get_double("excitation.frequency", frequency);
    amplitude = cfg.get_double("excitation.amplitude", amplitude);
    quadrature_points = cfg.get_int("assembly.quadrature", quadrature_points);

    const std::string inner = cfg.get_string("hybrid.inner", "");
    if (inner == "qr")
        hybrid.inner = InnerSolver::QR;
    else if (inner == "hhl")
        hybrid.inner = InnerSolver::HHL;
    else if (inner == "vqls")
        hybrid.inner = InnerSolver::VQLS;
    else if (!inner.empty())
        throw IoError("hybrid.inner must be qr, hhl, or vqls");
    const std::string precond = cfg.get_string("hybrid.precond", "");
    if (precond == "identity")
        hybrid.preconditioner = PreconditionerKind::Identity;
    else if (precond == "ilut")
        hybrid.preconditioner = PreconditionerKind::Ilut;
    else if (!precond.empty())
        throw IoError("hybrid.precond must be identity or ilut");
    hybrid.ilut_drop_tolerance = cfg.get_double("hybrid.ilut_tau", hybrid.ilut_drop_tolerance);
    hybrid.exterior_threshold = cfg.get_double("hybrid.ext_threshold", hybrid.exterior_threshold);
    hybrid.interior_threshold = cfg.get_double("hybrid.int_threshold", hybrid.interior_threshold);
    hybrid.subspace_dim = cfg.get_int("hybrid.subspace_dim", hybrid.subspace_dim);
    hybrid.max_exterior = cfg.get_int("hybrid.max_exterior", hybrid.max_exterior);
    hybrid.max_interior = cfg.get_int("hybrid.max_interior", hybrid.max_interior);
    hybrid.relative_residuals =
        cfg.get_string("hybrid.residuals", hybrid.relative_residuals ? "relative" : "absolute") ==
        "relative";
    hybrid.estimate_condition = cfg.get_bool("hybrid.estimate_condition", hybrid.estimate_condition);
    hybrid.seed = static_cast<unsigned long long>(cfg.get_int64("hybrid.seed", hybrid.seed));

    hybrid.hhl.clock_qubits = cfg.get_int("hhl.clock_qubits", hybrid.hhl.clock_qubits);
    hybrid.hhl.evolution_time = cfg.get_double("hhl.evolution_time", hybrid.hhl.evolution_time);
    hybrid.hhl.rotation_constant =
        cfg.get_double("hhl.rotation_constant", hybrid.hhl.rotation_constant);
    hybrid.hhl.max_attempts = cfg.get_int("hhl.max_attempts", hybrid.hhl.max_attempts);

    hybrid.vqls.layers = cfg.get_int("vqls.layers", hybrid.vqls.layers);
    hybrid.vqls.cost_threshold = cfg.get_double("vqls.cost_threshold", hybrid.vqls.cost_threshold);
    hybrid.vqls.max_iterations = cfg.get_int("vqls.max_iterations", hybrid.vqls.max_iterations);
    hybrid.vqls.learning_rate = cfg.get_double("vqls.learning_rate", hybrid.vqls.learning_rate);
    hybrid.vqls.restarts = cfg.get_int("vqls.restarts", hybrid.vqls.restarts);
    hybrid.vqls.shots = cfg.get_int("vqls.shots", hybrid.vqls.shots);
    vqls_trace = cfg.get_bool("vqls.trace", vqls_trace);

    hybrid.noise.probability = cfg.get_double("noise.probability", hybrid.noise.probability);

    theta_step_deg = cfg.get_double("rcs.theta_step", theta_step_deg);
    output_dir = cfg.get_string("output.directory", output_dir);
    workers = cfg.get_int("output.workers", workers);

    bench_levels = cfg.get_string("bench.levels", bench_levels);
    bench_uv = cfg.get_string("bench.uv", bench_uv);
    bench_min_ms = cfg.get_double("bench.min_ms", bench_min_ms);
}

void RunConfig::validate() const {
    if (frequency <= 0.0) throw std::invalid_argument("frequency must be positive");
    if (geometry == GeometryKind::MeshFile && mesh_path.empty())
        throw std::invalid_argument("mesh geometry requires geometry.path");
    if (radius <= 0.0 && geometry != GeometryKind::MeshFile)
        throw std::invalid_argument("sphere radius must be positive");
    if (hybrid.noise.probability < 0.0 || hybrid.noise.probability > 1.0)
        throw std::invalid_argument("noise probability must be in [0, 1]");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

} // namespace efh
