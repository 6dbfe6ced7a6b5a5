#include "zfropm/optical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zfropm/constants.hpp"

namespace zfropm {

void AbsorptionModelParams::validate() const {
    if (fwhm_hz <= 0.0) {
        throw std::invalid_argument("AbsorptionModelParams: FWHM must be positive");
    }
    if (depth < 0.0) {
        throw std::invalid_argument("AbsorptionModelParams: depth must be non-negative");
    }
}

OpticalDepthResult optical_depth(const AlkaliSpecies& species, double density_per_m3,
                                 double length_m, double line_fwhm_rad_per_s) {
    if (density_per_m3 < 0.0) {
        throw std::invalid_argument("optical_depth: density must be non-negative");
    }
    if (length_m <= 0.0) {
        throw std::invalid_argument("optical_depth: path length must be positive");
    }
    if (line_fwhm_rad_per_s <= 0.0) {
        throw std::invalid_argument("optical_depth: line FWHM must be positive");
    }
    OpticalDepthResult r;
    r.density_per_m3 = density_per_m3;
    r.length_m = length_m;
    r.line_fwhm_rad_per_s = line_fwhm_rad_per_s;
    r.d0 = std::numbers::pi * density_per_m3 * constants::electron_radius *
           constants::speed_of_light * species.f_osc_d1 * length_m /
           (line_fwhm_rad_per_s / 2.0);
    return r;
}

double transmitted_intensity(double i0, double d0, double p_z) {
    if (i0 < 0.0) {
        throw std::invalid_argument("transmitted_intensity: intensity must be non-negative");
    }
    if (d0 < 0.0) {
        throw std::invalid_argument("transmitted_intensity: optical depth must be non-negative");
    }
    if (p_z < -1.0 || p_z > 1.0) {
        throw std::invalid_argument("transmitted_intensity: polarization must lie in [-1, 1]");
    }
    return i0 * std::exp(-d0 * (1.0 - p_z));
}

double absorption_model(const AbsorptionModelParams& p, double nu_hz) {
    p.validate();
    const double d = nu_hz - p.nu0_hz;
    const double hw2 = p.fwhm_hz * p.fwhm_hz / 4.0;
    return p.c0 + p.c1 * d - p.depth * hw2 / (d * d + hw2);
}

}  // namespace zfropm
