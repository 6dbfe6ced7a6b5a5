#pragma once

#include <string>

#include "zfropm/constants.hpp"

namespace zfropm {

/// Alkali species parameter set. All cross sections are in m^2; the config
/// layer accepts cm^2 and converts at the boundary.
struct AlkaliSpecies {
    std::string name;
    double mass_kg = 0.0;
    double nuclear_spin = 0.0;
    /// D1 oscillator strength.
    double f_osc_d1 = 0.0;
    /// Gyromagnetic ratio [rad/(s T)] including the slowing-down factor
    /// 1/(2I+1) for the stretched ground-state manifold.
    double gamma_rad_per_s_per_t = 0.0;
    /// Saturated vapor pressure correlation log10(P[atm]) = vp_a - vp_b / T[K].
    double vp_a = 0.0;
    double vp_b = 0.0;
    /// Alkali-alkali spin-exchange cross section [m^2].
    double sigma_se_m2 = 0.0;
    /// Alkali-alkali spin-destruction cross section [m^2].
    double sigma_sd_m2 = 0.0;
    /// Nuclear slowing-down weight for spin-exchange broadening.
    double q_se = 0.0;

    static AlkaliSpecies rb85() {
        AlkaliSpecies s;
        s.name = "Rb85";
        s.mass_kg = 84.911789738 * constants::amu;
        s.nuclear_spin = 2.5;
        s.f_osc_d1 = 0.3423;
        s.gamma_rad_per_s_per_t = 2.9327e10;
        s.vp_a = 4.312;
        s.vp_b = 4040.0;
        s.sigma_se_m2 = 1.9e-18;
        s.sigma_sd_m2 = 1.6e-21;
        s.q_se = 5.0 / 27.0;
        return s;
    }

    static AlkaliSpecies rb87() {
        AlkaliSpecies s = rb85();
        s.name = "Rb87";
        s.mass_kg = 86.909180531 * constants::amu;
        s.nuclear_spin = 1.5;
        s.gamma_rad_per_s_per_t = 4.3966e10;
        return s;
    }
};

/// Buffer gas parameter set.
struct BufferGas {
    std::string name;
    double mass_kg = 0.0;
    /// Alkali - buffer-gas spin-destruction cross section [m^2].
    double sigma_alkali_m2 = 0.0;
    /// Pressure broadening of the optical line [Hz FWHM per amagat].
    double broadening_hz_per_amg = 0.0;
    /// Alkali diffusion constant in this gas at 1 amg and 273.15 K [m^2/s].
    double diffusion_d0_m2_per_s = 0.0;

    static BufferGas nitrogen() {
        BufferGas g;
        g.name = "N2";
        g.mass_kg = 28.0134 * constants::amu;
        g.sigma_alkali_m2 = 1.0e-26;
        g.broadening_hz_per_amg = 18.0e9;
        g.diffusion_d0_m2_per_s = 0.12e-4;
        return g;
    }
};

}  // namespace zfropm
