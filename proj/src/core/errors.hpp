#pragma once

#include <stdexcept>
#include <string>

namespace efh {

/// Geometry input is malformed (parse failure, open surface, degenerate element).
struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be opened or written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical operation failed (singular pivot, annihilated direction, ...).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace efh
