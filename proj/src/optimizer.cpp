#include "zfropm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zfropm/reference_rates.hpp"
#include "zfropm/vapor.hpp"

namespace zfropm {

double DarkRateCoefficients::rate_at(double eta_amg) const {
    if (eta_amg <= 0.0) {
        throw std::invalid_argument("DarkRateCoefficients: density must be positive");
    }
    return wall_amg / eta_amg + bg_per_amg * eta_amg + constant;
}

DarkRateCoefficients physical_coefficients(const CellGeometry& geom, const AlkaliSpecies& species,
                                           const BufferGas& gas, double temperature_k) {
    // wall_rate ~ 1/eta and buffer_gas_rate ~ eta exactly, so one evaluation
    // at 1 amg pins both coefficients.
    DarkRateCoefficients c;
    c.wall_amg = wall_rate(geom, gas, 1.0, temperature_k).events_per_second();
    c.bg_per_amg = buffer_gas_rate(species, gas, 1.0, temperature_k).events_per_second();
    const double n = vapor_density(species, temperature_k);
    c.constant = spin_exchange_rate(species, n, temperature_k).events_per_second() +
                 spin_destruction_rate(species, n, temperature_k).events_per_second();
    c.convention = RateConvention::events_per_second;
    return c;
}

DarkRateCoefficients reported_coefficients() {
    DarkRateCoefficients c;
    c.wall_amg = reference_rates::wall_cyclic * 0.75;
    c.bg_per_amg = reference_rates::buffer_gas_cyclic / 0.75;
    c.constant =
        reference_rates::spin_exchange_cyclic + reference_rates::spin_destruction_cyclic;
    c.convention = RateConvention::cyclic;
    return c;
}

namespace {

RateValue make_rate(double value, RateConvention convention) {
    return convention == RateConvention::cyclic ? RateValue::cyclic(value)
                                                : RateValue::events(value);
}

void check_range(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo) || hi > 1000.0) {
        throw std::invalid_argument("density optimum: search range must satisfy 0 < lo < hi <= 1000 amg");
    }
}

}  // namespace

DensityOptimum closed_form_optimum(const DarkRateCoefficients& coeffs, double lo_amg,
                                   double hi_amg) {
    check_range(lo_amg, hi_amg);
    DensityOptimum r;
    if (coeffs.wall_amg == 0.0 && coeffs.bg_per_amg == 0.0) {
        r.degenerate = true;
        r.eta_opt_amg = 0.5 * (lo_amg + hi_amg);
        r.dark_min = make_rate(coeffs.constant, coeffs.convention);
        return r;
    }
    double eta;
    if (coeffs.bg_per_amg == 0.0) {
        eta = hi_amg;  // pure A/eta: push to the upper edge
    } else if (coeffs.wall_amg == 0.0) {
        eta = lo_amg;  // pure B*eta: lower edge
    } else {
        eta = std::clamp(std::sqrt(coeffs.wall_amg / coeffs.bg_per_amg), lo_amg, hi_amg);
    }
    r.eta_opt_amg = eta;
    r.dark_min = make_rate(coeffs.rate_at(eta), coeffs.convention);
    return r;
}

DensityOptimum minimize_dark_rate(const DarkRateCoefficients& coeffs, double lo_amg,
                                  double hi_amg) {
    check_range(lo_amg, hi_amg);
    if (coeffs.wall_amg == 0.0 && coeffs.bg_per_amg == 0.0) {
        DensityOptimum r;
        r.degenerate = true;
        r.eta_opt_amg = 0.5 * (lo_amg + hi_amg);
        r.dark_min = make_rate(coeffs.constant, coeffs.convention);
        return r;
    }

    // Coarse log-spaced grid to bracket the minimum.
    constexpr int grid_points = 200;
    const double llo = std::log(lo_amg), lhi = std::log(hi_amg);
    int best = 0;
    double best_value = coeffs.rate_at(lo_amg);
    for (int i = 1; i < grid_points; ++i) {
        const double eta = std::exp(llo + (lhi - llo) * i / (grid_points - 1));
        const double v = coeffs.rate_at(eta);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    auto grid_eta = [&](int i) {
        return std::exp(llo + (lhi - llo) * std::clamp(i, 0, grid_points - 1) /
                                  (grid_points - 1));
    };
    double a = grid_eta(best - 1);
    double b = grid_eta(best + 1);

    // Golden-section refinement of the bracket.
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - (b - a) * inv_phi;
    double d = a + (b - a) * inv_phi;
    double fc = coeffs.rate_at(c), fd = coeffs.rate_at(d);
    while (b - a > 1e-12 * std::max(1.0, b)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = coeffs.rate_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = coeffs.rate_at(d);
        }
    }
    DensityOptimum r;
    r.eta_opt_amg = 0.5 * (a + b);
    r.dark_min = make_rate(coeffs.rate_at(r.eta_opt_amg), coeffs.convention);
    return r;
}

BufferOptimumResult optimal_buffer_density(const CellGeometry& geom, const AlkaliSpecies& species,
                                           const BufferGas& gas, double temperature_k,
                                           double lo_amg, double hi_amg) {
    const DarkRateCoefficients coeffs = physical_coefficients(geom, species, gas, temperature_k);
    const DensityOptimum opt = minimize_dark_rate(coeffs, lo_amg, hi_amg);

    OperatingPoint op;
    op.temperature_k = temperature_k;
    op.eta_amg = opt.eta_opt_amg;

    BufferOptimumResult r;
    r.eta_opt_amg = opt.eta_opt_amg;
    r.dark_min = opt.dark_min;
    r.degenerate = opt.degenerate;
    r.budget_at_optimum = make_rate_budget(geom, species, gas, op);
    return r;
}

double asn_sensitivity(const RateValue& dark_rate, double density_per_m3, double volume_m3,
                       double time_s, double gamma_rad_per_s_per_t) {
    if (density_per_m3 <= 0.0 || volume_m3 <= 0.0) {
        throw std::invalid_argument("asn_sensitivity: atom number must be positive");
    }
    if (time_s <= 0.0) {
        throw std::invalid_argument("asn_sensitivity: measurement time must be positive");
    }
    if (gamma_rad_per_s_per_t <= 0.0) {
        throw std::invalid_argument("asn_sensitivity: gyromagnetic ratio must be positive");
    }
    const double atoms = density_per_m3 * volume_m3 * time_s;
    return std::sqrt(2.0 * constants::euler_e * dark_rate.cyclic_value() / atoms) /
           gamma_rad_per_s_per_t;
}

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 2) {
        throw std::invalid_argument("design scan: grid needs at least two points");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) {
            throw std::invalid_argument("design scan: grid must be strictly increasing");
        }
    }
}

}  // namespace

DesignScan rate_scan(const CellGeometry& geom, const AlkaliSpecies& species, const BufferGas& gas,
                     const OperatingPoint& op, const std::vector<double>& eta_grid_amg) {
    check_grid(eta_grid_amg);
    DesignScan scan;
    scan.variable = ScanVariable::eta;
    scan.grid = eta_grid_amg;
    const double n = vapor_density(species, op.temperature_k);
    for (double eta : eta_grid_amg) {
        OperatingPoint point = op;
        point.eta_amg = eta;
        point.line_fwhm_rad_per_s = 0.0;  // rebroaden with the scanned density
        RateBudget budget = make_rate_budget(geom, species, gas, point);
        scan.sensitivity_t.push_back(asn_sensitivity(budget.dark, n, geom.volume_m3(),
                                                     op.measurement_time_s,
                                                     species.gamma_rad_per_s_per_t));
        scan.budgets.push_back(std::move(budget));
    }
    const DensityOptimum opt = minimize_dark_rate(
        physical_coefficients(geom, species, gas, op.temperature_k), eta_grid_amg.front(),
        eta_grid_amg.back());
    scan.optimum_variable = opt.eta_opt_amg;
    scan.optimum_value = opt.dark_min.events_per_second();
    return scan;
}

DesignScan temperature_scan(const CellGeometry& geom, const AlkaliSpecies& species,
                            const BufferGas& gas, const OperatingPoint& op,
                            const std::vector<double>& temperature_grid_k) {
    check_grid(temperature_grid_k);
    DesignScan scan;
    scan.variable = ScanVariable::temperature;
    scan.grid = temperature_grid_k;
    double best = 0.0;
    double best_t = temperature_grid_k.front();
    for (double t : temperature_grid_k) {
        OperatingPoint point = op;
        point.temperature_k = t;
        RateBudget budget = make_rate_budget(geom, species, gas, point);
        const double n = vapor_density(species, t);
        const double s = asn_sensitivity(budget.dark, n, geom.volume_m3(),
                                         op.measurement_time_s,
                                         species.gamma_rad_per_s_per_t);
        if (scan.sensitivity_t.empty() || s < best) {
            best = s;
            best_t = t;
        }
        scan.sensitivity_t.push_back(s);
        scan.budgets.push_back(std::move(budget));
    }
    scan.optimum_variable = best_t;
    scan.optimum_value = best;
    return scan;
}

DesignScan sensitivity_vs_volume(const CellGeometry& base_geom, const AlkaliSpecies& species,
                                 const AlkaliSpecies& sensitivity_species, const BufferGas& gas,
                                 double temperature_k, double time_s,
                                 const std::vector<double>& volume_grid_m3,
                                 CoefficientMode mode) {
    check_grid(volume_grid_m3);
    base_geom.validate();
    const double base_volume = base_geom.volume_m3();
    const double n = vapor_density(species, temperature_k);
    const DarkRateCoefficients base_coeffs =
        mode == CoefficientMode::reported
            ? reported_coefficients()
            : physical_coefficients(base_geom, species, gas, temperature_k);

    DesignScan scan;
    scan.variable = ScanVariable::volume;
    scan.grid = volume_grid_m3;
    double best = 0.0;
    double best_v = volume_grid_m3.front();
    for (double volume : volume_grid_m3) {
        const double k = std::cbrt(volume / base_volume);
        DarkRateCoefficients coeffs = base_coeffs;
        coeffs.wall_amg = base_coeffs.wall_amg / (k * k);
        const DensityOptimum opt = minimize_dark_rate(coeffs, 1e-3, 1000.0);
        const double s = asn_sensitivity(opt.dark_min, n, volume, time_s,
                                         sensitivity_species.gamma_rad_per_s_per_t);

        RateBudget budget;
        budget.wall = make_rate(coeffs.wall_amg / opt.eta_opt_amg, coeffs.convention);
        budget.buffer_gas = make_rate(coeffs.bg_per_amg * opt.eta_opt_amg, coeffs.convention);
        budget.spin_exchange = make_rate(
            mode == CoefficientMode::reported
                ? reference_rates::spin_exchange_cyclic
                : spin_exchange_rate(species, n, temperature_k).events_per_second(),
            coeffs.convention);
        budget.spin_destruction = make_rate(
            mode == CoefficientMode::reported
                ? reference_rates::spin_destruction_cyclic
                : spin_destruction_rate(species, n, temperature_k).events_per_second(),
            coeffs.convention);
        budget.dark = opt.dark_min;
        budget.pumping = make_rate(0.0, coeffs.convention);
        budget.total = opt.dark_min;

        if (scan.sensitivity_t.empty() || s < best) {
            best = s;
            best_v = volume;
        }
        scan.eta_opt_amg.push_back(opt.eta_opt_amg);
        scan.sensitivity_t.push_back(s);
        scan.budgets.push_back(std::move(budget));
    }
    scan.optimum_variable = best_v;
    scan.optimum_value = best;
    return scan;
}

}  // namespace zfropm
