#pragma once

#include "zfropm/constants.hpp"
#include "zfropm/geometry.hpp"
#include "zfropm/species.hpp"

namespace zfropm {

/// Ground-state relaxation budget at one operating point. Each entry is a
/// RateValue so the events-per-second vs cyclic convention stays explicit.
struct RateBudget {
    RateValue wall;             ///< Diffusion to the walls, lowest mode.
    RateValue spin_exchange;    ///< Alkali-alkali spin exchange (q_se weighted).
    RateValue spin_destruction; ///< Alkali-alkali spin destruction.
    RateValue buffer_gas;       ///< Alkali - buffer-gas spin destruction.
    RateValue pumping;          ///< Optical pumping rate at the entrance.
    RateValue dark;             ///< Sum of the four in-the-dark channels.
    RateValue total;            ///< dark + pumping.
};

/// Wall-collision relaxation rate [events/s]: lowest diffusion mode of a
/// rectangular channel, [(pi/lx)^2 + (pi/ly)^2 + (pi/lz)^2] * D(eta, T).
RateValue wall_rate(const CellGeometry& geom, const BufferGas& gas, double eta_amg,
                    double temperature_k);

/// Spin-exchange broadening rate [events/s]: q_se * n * sigma_se * vbar.
RateValue spin_exchange_rate(const AlkaliSpecies& species, double alkali_density_per_m3,
                             double temperature_k);

/// Alkali-alkali spin-destruction rate [events/s]: n * sigma_sd * vbar.
RateValue spin_destruction_rate(const AlkaliSpecies& species, double alkali_density_per_m3,
                                double temperature_k);

/// Alkali - buffer-gas spin-destruction rate [events/s].
RateValue buffer_gas_rate(const AlkaliSpecies& species, const BufferGas& gas, double eta_amg,
                          double temperature_k);

/// Optical pumping rate [events/s] for a circularly polarized pump of power P
/// focused to waist w (I = P / (pi w^2 / 2)), detuned on resonance:
/// R = r_e c f I / ((GammaL/2) hbar omega).
RateValue pumping_rate(const OperatingPoint& op, const AlkaliSpecies& species,
                       const BufferGas& gas);

/// Full budget at an operating point. Alkali density comes from the vapor
/// pressure at op.temperature_k.
RateBudget make_rate_budget(const CellGeometry& geom, const AlkaliSpecies& species,
                            const BufferGas& gas, const OperatingPoint& op);

/// Zero-field resonance magnetic linewidth [T FWHM] implied by a total
/// ground-state relaxation rate: dB = Gamma_tot / gamma.
double linewidth_from_rates(const RateValue& total_rate, const AlkaliSpecies& species);

}  // namespace zfropm
