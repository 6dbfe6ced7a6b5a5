#pragma once

#include <stdexcept>

namespace zfropm {

/// Rectangular vapor-cell channel. Lengths in meters.
struct CellGeometry {
    double lx_m = 0.0;
    double ly_m = 0.0;
    double lz_m = 0.0;
    /// Distance from the channel center to the outer chip surface.
    double standoff_m = 0.0;

    double volume_m3() const { return lx_m * ly_m * lz_m; }

    void validate() const {
        if (lx_m <= 0.0 || ly_m <= 0.0 || lz_m <= 0.0) {
            throw std::invalid_argument("CellGeometry: channel dimensions must be positive");
        }
        if (standoff_m < 0.0) {
            throw std::invalid_argument("CellGeometry: standoff must be non-negative");
        }
    }

    /// Reference laser-written micro-channel: 500 um x 500 um cross section,
    /// 9 mm length, 750 um standoff.
    static CellGeometry reference_channel() {
        return {500e-6, 500e-6, 9e-3, 750e-6};
    }
};

/// Operating point of the magnetometer: thermodynamics plus pump optics.
struct OperatingPoint {
    double temperature_k = 369.15;
    double eta_amg = 0.75;
    double pump_power_w = 55e-6;
    double beam_waist_m = 250e-6;
    /// Fraction of the pump power reaching the atoms.
    double transmission = 1.0;
    double pump_frequency_hz = 3.77e14;
    double measurement_time_s = 0.5;
    /// Optical line FWHM [rad/s]. Zero means "derive from the buffer-gas
    /// pressure broadening at eta_amg".
    double line_fwhm_rad_per_s = 0.0;

    void validate() const {
        if (temperature_k <= 0.0) throw std::invalid_argument("OperatingPoint: temperature must be positive");
        if (eta_amg < 0.0) throw std::invalid_argument("OperatingPoint: buffer density must be non-negative");
        if (pump_power_w < 0.0) throw std::invalid_argument("OperatingPoint: pump power must be non-negative");
        if (beam_waist_m <= 0.0) throw std::invalid_argument("OperatingPoint: beam waist must be positive");
        if (transmission < 0.0 || transmission > 1.0) {
            throw std::invalid_argument("OperatingPoint: transmission must lie in [0, 1]");
        }
        if (pump_frequency_hz <= 0.0) throw std::invalid_argument("OperatingPoint: pump frequency must be positive");
        if (measurement_time_s <= 0.0) throw std::invalid_argument("OperatingPoint: measurement time must be positive");
        if (line_fwhm_rad_per_s < 0.0) throw std::invalid_argument("OperatingPoint: line FWHM must be non-negative");
    }
};

}  // namespace zfropm
