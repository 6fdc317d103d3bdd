#pragma once

#include <map>
#include <string>

#include "hybrid.hpp"

namespace efh {

/// Flat view of an INI-style config file: `[section]` headers, `key = value`
/// lines, `#` or `;` comments. Keys are stored as "section.key".
class KeyValueConfig {
public:
    KeyValueConfig() = default;
    static KeyValueConfig load(const std::string& path);
    static KeyValueConfig parse(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    long long get_int64(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

enum class GeometryKind { Sphere, UvSphere, MeshFile };
enum class ExperimentKind { Solve, Rcs, Mie, Bench, Compare, CaseTable };

ExperimentKind experiment_kind_from_name(const std::string& name);
const char* experiment_kind_name(ExperimentKind kind);

/// Everything one experiment needs: geometry, excitation, solver settings,
/// output location.
struct RunConfig {
    ExperimentKind experiment = ExperimentKind::Solve;

    GeometryKind geometry = GeometryKind::Sphere;
    double radius = 1.0;       // m
    int sphere_level = 2;      // icosphere subdivision
    int uv_meridians = 71;
    int uv_rings = 21;
    std::string mesh_path;

    double frequency = 300e6;  // Hz
    double amplitude = 1.0;    // V/m
    int quadrature_points = 4;

    HybridConfig hybrid;

    double theta_step_deg = 1.0;
    std::string output_dir = "out";
    int workers = 1;
    bool vqls_trace = false;

    // bench: comma lists of icosphere levels and meridiansxrings uv sizes
    std::string bench_levels = "0,1,2";
    std::string bench_uv = "31x17";
    double bench_min_ms = 50.0; // repeat timed sections at least this long

    /// Read every recognized key from the config (missing keys keep defaults).
    void apply(const KeyValueConfig& cfg);
    void validate() const;
};

} // namespace efh
