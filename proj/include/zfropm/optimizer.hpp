#pragma once

#include <string>
#include <vector>

#include "zfropm/relaxation.hpp"

namespace zfropm {

/// Dark-rate structure over buffer density: rate(eta) = A/eta + B*eta + C.
/// Units are whatever rate convention the coefficients were built in; the
/// two factories below say which.
struct DarkRateCoefficients {
    double wall_amg = 0.0;      ///< A: wall term at 1 amg [rate * amg].
    double bg_per_amg = 0.0;    ///< B: buffer-gas slope [rate / amg].
    double constant = 0.0;      ///< C: density-independent alkali terms [rate].
    RateConvention convention = RateConvention::events_per_second;

    double rate_at(double eta_amg) const;
};

/// Coefficients from the analytic rate model, events per second.
DarkRateCoefficients physical_coefficients(const CellGeometry& geom, const AlkaliSpecies& species,
                                           const BufferGas& gas, double temperature_k);

/// Coefficients pinned from the reported reference-cell characterization at
/// 0.75 amg (cyclic convention): A = 2326*0.75, B = 25.7/0.75, C = 111.7.
DarkRateCoefficients reported_coefficients();

struct DensityOptimum {
    double eta_opt_amg = 0.0;
    RateValue dark_min;
    bool degenerate = false;  ///< Constant objective; eta is the range midpoint.
};

/// Closed form for the A/eta + B*eta + C structure: eta* = sqrt(A/B),
/// clipped to [lo, hi]; degenerate when A = B = 0.
DensityOptimum closed_form_optimum(const DarkRateCoefficients& coeffs, double lo_amg,
                                   double hi_amg);

/// Numeric minimum of coeffs.rate_at over [lo, hi]: coarse log-spaced grid
/// plus golden-section refinement. Agrees with the closed form to 1e-6
/// relative on this rate structure.
DensityOptimum minimize_dark_rate(const DarkRateCoefficients& coeffs, double lo_amg,
                                  double hi_amg);

struct BufferOptimumResult {
    double eta_opt_amg = 0.0;
    RateValue dark_min;
    RateBudget budget_at_optimum;
    bool degenerate = false;
};

/// Physical-model optimum over the buffer density search range [amg].
BufferOptimumResult optimal_buffer_density(const CellGeometry& geom, const AlkaliSpecies& species,
                                           const BufferGas& gas, double temperature_k,
                                           double lo_amg, double hi_amg);

/// Eq.-B1 atomic-shot-noise sensitivity [T/sqrt(Hz)]:
/// (1/gamma) sqrt(2 e Gamma_dk / (n V t)), consuming the rate's cyclic value.
double asn_sensitivity(const RateValue& dark_rate, double density_per_m3, double volume_m3,
                       double time_s, double gamma_rad_per_s_per_t);

enum class ScanVariable { eta, temperature, volume };

struct DesignScan {
    ScanVariable variable = ScanVariable::eta;
    std::vector<double> grid;               ///< amg, K, or m^3.
    std::vector<RateBudget> budgets;        ///< Per grid point.
    std::vector<double> sensitivity_t;      ///< delta-B ASN per point [T/sqrt(Hz)].
    std::vector<double> eta_opt_amg;        ///< Volume scans only: optimum per point.
    double optimum_variable = 0.0;          ///< Grid refinement argmin.
    double optimum_value = 0.0;             ///< Objective at the optimum.
};

/// Relaxation budget and sensitivity across a buffer-density grid [amg].
DesignScan rate_scan(const CellGeometry& geom, const AlkaliSpecies& species, const BufferGas& gas,
                     const OperatingPoint& op, const std::vector<double>& eta_grid_amg);

/// Budget and sensitivity across a temperature grid [K] at fixed eta.
DesignScan temperature_scan(const CellGeometry& geom, const AlkaliSpecies& species,
                            const BufferGas& gas, const OperatingPoint& op,
                            const std::vector<double>& temperature_grid_k);

enum class CoefficientMode { physical, reported };

/// Optimal sensitivity versus sensing volume at fixed aspect ratio: scaling
/// all sides by k scales the wall coefficient by 1/k^2 while the collisional
/// terms stay fixed; eta is re-optimized per point. The reported mode scales
/// the reference-cell coefficients; the physical mode rebuilds them from the
/// scaled geometry. Sensitivity uses gamma of `sensitivity_species`.
DesignScan sensitivity_vs_volume(const CellGeometry& base_geom, const AlkaliSpecies& species,
                                 const AlkaliSpecies& sensitivity_species, const BufferGas& gas,
                                 double temperature_k, double time_s,
                                 const std::vector<double>& volume_grid_m3, CoefficientMode mode);

}  // namespace zfropm
