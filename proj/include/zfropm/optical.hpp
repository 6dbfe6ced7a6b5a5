#pragma once

#include "zfropm/species.hpp"

namespace zfropm {

struct OpticalDepthResult {
    double d0 = 0.0;              ///< On-resonance optical depth.
    double density_per_m3 = 0.0;  ///< Alkali density used.
    double length_m = 0.0;        ///< Optical path used.
    double line_fwhm_rad_per_s = 0.0;
};

/// Absorptive Lorentzian on a linear baseline:
/// c0 + c1 (nu - nu0) - depth * (fwhm^2/4) / ((nu - nu0)^2 + fwhm^2/4).
struct AbsorptionModelParams {
    double c0 = 0.0;       ///< Baseline value at line center.
    double c1 = 0.0;       ///< Baseline slope [1/Hz].
    double nu0_hz = 0.0;   ///< Line center.
    double fwhm_hz = 0.0;  ///< Lorentzian FWHM.
    double depth = 0.0;    ///< Depth of the dip below the baseline.

    void validate() const;
};

/// On-resonance optical depth D0 = pi n r_e c f_osc l / (GammaL / 2).
OpticalDepthResult optical_depth(const AlkaliSpecies& species, double density_per_m3,
                                 double length_m, double line_fwhm_rad_per_s);

/// Beer-Lambert transmission under homogeneous polarization:
/// I = I0 exp(-d0 (1 - p_z)).
double transmitted_intensity(double i0, double d0, double p_z);

double absorption_model(const AbsorptionModelParams& params, double nu_hz);

}  // namespace zfropm
