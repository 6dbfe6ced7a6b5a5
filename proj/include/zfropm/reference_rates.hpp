#pragma once

namespace zfropm::reference_rates {

// Reported rate characterization of the reference micro-channel cell
// (Rb, 0.75 amg N2, 96 C). All rate entries are cyclic values: a value X
// here denotes an angular rate of 2*pi*X s^-1.

inline constexpr double wall_cyclic = 2326.0;
inline constexpr double spin_exchange_cyclic = 111.2;
inline constexpr double buffer_gas_cyclic = 25.7;
inline constexpr double spin_destruction_cyclic = 0.5;
inline constexpr double dark_total_cyclic = 2483.0;
inline constexpr double pumping_cyclic = 1513.0;

/// Dark rate at the optimal buffer density, cyclic.
inline constexpr double dark_total_optimal_cyclic = 600.0;
/// Optimal buffer density [amg].
inline constexpr double eta_optimal_amg = 7.1;

/// Atomic-shot-noise sensitivity at the optimum [fT/sqrt(Hz)].
inline constexpr double sensitivity_optimal_ft = 18.3;
/// Demonstrated experimental sensitivity [fT/sqrt(Hz)].
inline constexpr double sensitivity_experimental_ft = 36.6;

/// Reference-cell on-resonance optical depth and fit-derived N2 line FWHM.
inline constexpr double optical_depth = 0.9;
inline constexpr double line_fwhm_hz = 13.5e9;

// The analytic rate model and the reported characterization disagree by
// fixed factors; docs/known_deviations.md derives each one. The model is
// kept analytic and the factors are recorded here so tests can pin them.

/// Reported wall rate (as an angular value, 2*pi*2326 s^-1) over the
/// analytic lowest-mode events rate (1471 s^-1). Within 0.7% of pi^2.
inline constexpr double wall_deviation_factor = 9.936;

/// Reported buffer-gas rate over the analytic n*sigma*vbar value.
inline constexpr double buffer_gas_deviation_factor = 1.3155;

/// Reported pumping rate over the analytic entrance-intensity value.
inline constexpr double pumping_deviation_factor = 0.6217;

}  // namespace zfropm::reference_rates
