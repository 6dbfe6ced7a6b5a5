#pragma once

#include <stdexcept>

namespace zfropm {

/// Zero-field resonance in the photodetector voltage:
/// V(B) = a + (b - a) (dB^2/4) / ((B - B0)^2 + dB^2/4).
struct ZfrParams {
    double a_v = 0.0;       ///< Minimum voltage (wings).
    double b_v = 0.0;       ///< Maximum voltage (peak).
    double b0_t = 0.0;      ///< Line center.
    double delta_b_t = 0.0; ///< FWHM.

    void validate() const {
        if (delta_b_t <= 0.0) throw std::invalid_argument("ZfrParams: FWHM must be positive");
        if (b_v < a_v) throw std::invalid_argument("ZfrParams: maximum below minimum");
    }
};

/// Dispersive quadrature profile:
/// V_Q(B) = (u/2) (B - B0) dB / ((B - B0)^2 + dB^2/4).
struct DispersiveParams {
    double u_v = 0.0;
    double b0_t = 0.0;
    double delta_b_t = 0.0;

    void validate() const {
        if (delta_b_t <= 0.0) throw std::invalid_argument("DispersiveParams: FWHM must be positive");
    }
};

double zfr_voltage(const ZfrParams& p, double b_t);

double dispersive_voltage(const DispersiveParams& p, double b_t);

/// Resonance sharpness s = (b - a) / dB [V/T].
double sharpness(const ZfrParams& p);

/// Central slope of the dispersive profile, dV_Q/dB at B0 = 2u/dB [V/T].
double slope_at_center(const DispersiveParams& p);

}  // namespace zfropm
