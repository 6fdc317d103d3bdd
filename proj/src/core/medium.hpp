#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vec3.hpp"

namespace efh {

/// Homogeneous background medium. Defaults are free space.
struct BackgroundMedium {
    double permittivity = 8.8541878128e-12; // F/m
    double permeability = 1.25663706212e-6; // H/m

    double wave_speed() const { return 1.0 / std::sqrt(permittivity * permeability); }
    double angular_frequency(double frequency_hz) const {
        return 2.0 * std::numbers::pi * frequency_hz;
    }
    double wavenumber(double frequency_hz) const {
        return angular_frequency(frequency_hz) * std::sqrt(permittivity * permeability);
    }
};

/// Time-harmonic plane wave under the e^{+j omega t} convention:
///   E(r) = polarization * amplitude * exp(-j k propagation.r)
struct PlaneWave {
    Vec3 propagation{0, 0, -1}; ///< unit travel direction
    Vec3 polarization{1, 0, 0}; ///< unit E-field direction, orthogonal to propagation
    double amplitude = 1.0;     ///< V/m
    double frequency = 0.0;     ///< Hz

    void validate() const {
        if (std::abs(propagation.norm() - 1.0) > 1e-9 || std::abs(polarization.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("plane wave direction vectors must be unit length");
        if (std::abs(propagation.dot(polarization)) > 1e-9)
            throw std::invalid_argument("plane wave polarization must be orthogonal to propagation");
        if (frequency <= 0.0) throw std::invalid_argument("plane wave frequency must be positive");
    }
};

} // namespace efh
