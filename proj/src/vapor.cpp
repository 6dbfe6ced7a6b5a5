#include "zfropm/vapor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zfropm/constants.hpp"

namespace zfropm {

namespace {
constexpr double vp_valid_min_k = 312.0;
constexpr double vp_valid_max_k = 550.0;
}  // namespace

double vapor_density(const AlkaliSpecies& species, double temperature_k) {
    if (temperature_k < vp_valid_min_k || temperature_k > vp_valid_max_k) {
        throw std::invalid_argument(
            "vapor_density: temperature outside the [312, 550] K validity window");
    }
    const double p_atm = std::pow(10.0, species.vp_a - species.vp_b / temperature_k);
    const double p_pa = p_atm * constants::atmosphere_pa;
    return p_pa / (constants::boltzmann * temperature_k);
}

double mean_relative_speed(double mass1_kg, double mass2_kg, double temperature_k) {
    if (mass1_kg <= 0.0 || mass2_kg <= 0.0) {
        throw std::invalid_argument("mean_relative_speed: masses must be positive");
    }
    if (temperature_k <= 0.0) {
        throw std::invalid_argument("mean_relative_speed: temperature must be positive");
    }
    const double mu = mass1_kg * mass2_kg / (mass1_kg + mass2_kg);
    return std::sqrt(8.0 * constants::boltzmann * temperature_k / (std::numbers::pi * mu));
}

double fwhm_from_density(const BufferGas& gas, double eta_amg) {
    if (eta_amg < 0.0) {
        throw std::invalid_argument("fwhm_from_density: density must be non-negative");
    }
    return gas.broadening_hz_per_amg * eta_amg;
}

double density_from_fwhm(const BufferGas& gas, double fwhm_hz) {
    if (fwhm_hz < 0.0) {
        throw std::invalid_argument("density_from_fwhm: FWHM must be non-negative");
    }
    return fwhm_hz / gas.broadening_hz_per_amg;
}

double diffusion_coefficient(const BufferGas& gas, double eta_amg, double temperature_k) {
    if (eta_amg <= 0.0) {
        throw std::invalid_argument("diffusion_coefficient: density must be positive");
    }
    if (temperature_k <= 0.0) {
        throw std::invalid_argument("diffusion_coefficient: temperature must be positive");
    }
    return gas.diffusion_d0_m2_per_s / eta_amg * std::sqrt(temperature_k / 273.15);
}

}  // namespace zfropm
