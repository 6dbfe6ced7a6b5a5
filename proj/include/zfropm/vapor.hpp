#pragma once

#include "zfropm/species.hpp"

namespace zfropm {

/// Saturated alkali vapor number density [1/m^3] from the species'
/// log10(P[atm]) = a - b/T correlation. Valid for T in [312, 550] K
/// (liquid-phase branch); outside that window the correlation is not
/// trustworthy and the call throws.
double vapor_density(const AlkaliSpecies& species, double temperature_k);

/// Mean relative thermal speed [m/s] of two colliding partners.
double mean_relative_speed(double mass1_kg, double mass2_kg, double temperature_k);

/// Optical line FWHM [Hz] from buffer-gas pressure broadening.
double fwhm_from_density(const BufferGas& gas, double eta_amg);

/// Buffer-gas density [amg] producing the given optical FWHM [Hz].
double density_from_fwhm(const BufferGas& gas, double fwhm_hz);

/// Alkali diffusion coefficient [m^2/s] in the buffer gas at density
/// eta [amg] and temperature T [K]: (D0/eta) * sqrt(T/273.15).
double diffusion_coefficient(const BufferGas& gas, double eta_amg, double temperature_k);

}  // namespace zfropm
