#include "zfropm/relaxation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zfropm/optical.hpp"
#include "zfropm/vapor.hpp"

namespace zfropm {

RateValue wall_rate(const CellGeometry& geom, const BufferGas& gas, double eta_amg,
                    double temperature_k) {
    geom.validate();
    const double d = diffusion_coefficient(gas, eta_amg, temperature_k);
    const double pi = std::numbers::pi;
    const double k2 = (pi / geom.lx_m) * (pi / geom.lx_m) +
                      (pi / geom.ly_m) * (pi / geom.ly_m) +
                      (pi / geom.lz_m) * (pi / geom.lz_m);
    return RateValue::events(k2 * d);
}

RateValue spin_exchange_rate(const AlkaliSpecies& species, double alkali_density_per_m3,
                             double temperature_k) {
    if (alkali_density_per_m3 < 0.0) {
        throw std::invalid_argument("spin_exchange_rate: density must be non-negative");
    }
    const double vbar = mean_relative_speed(species.mass_kg, species.mass_kg, temperature_k);
    return RateValue::events(species.q_se * alkali_density_per_m3 * species.sigma_se_m2 * vbar);
}

RateValue spin_destruction_rate(const AlkaliSpecies& species, double alkali_density_per_m3,
                                double temperature_k) {
    if (alkali_density_per_m3 < 0.0) {
        throw std::invalid_argument("spin_destruction_rate: density must be non-negative");
    }
    const double vbar = mean_relative_speed(species.mass_kg, species.mass_kg, temperature_k);
    return RateValue::events(alkali_density_per_m3 * species.sigma_sd_m2 * vbar);
}

RateValue buffer_gas_rate(const AlkaliSpecies& species, const BufferGas& gas, double eta_amg,
                          double temperature_k) {
    const double n_gas = amagat_to_density(eta_amg);
    const double vbar = mean_relative_speed(species.mass_kg, gas.mass_kg, temperature_k);
    return RateValue::events(n_gas * gas.sigma_alkali_m2 * vbar);
}

namespace {

double line_fwhm_rad_per_s(const OperatingPoint& op, const BufferGas& gas) {
    if (op.line_fwhm_rad_per_s > 0.0) return op.line_fwhm_rad_per_s;
    return constants::two_pi * fwhm_from_density(gas, op.eta_amg);
}

}  // namespace

RateValue pumping_rate(const OperatingPoint& op, const AlkaliSpecies& species,
                       const BufferGas& gas) {
    op.validate();
    const double gamma_l = line_fwhm_rad_per_s(op, gas);
    if (gamma_l <= 0.0) {
        throw std::invalid_argument("pumping_rate: optical line FWHM must be positive");
    }
    const double area = std::numbers::pi * op.beam_waist_m * op.beam_waist_m / 2.0;
    const double intensity = op.transmission * op.pump_power_w / area;
    const double omega = constants::two_pi * op.pump_frequency_hz;
    const double r = constants::electron_radius * constants::speed_of_light * species.f_osc_d1 *
                     intensity / ((gamma_l / 2.0) * constants::hbar * omega);
    return RateValue::events(r);
}

RateBudget make_rate_budget(const CellGeometry& geom, const AlkaliSpecies& species,
                            const BufferGas& gas, const OperatingPoint& op) {
    const double n = vapor_density(species, op.temperature_k);
    RateBudget b;
    b.wall = wall_rate(geom, gas, op.eta_amg, op.temperature_k);
    b.spin_exchange = spin_exchange_rate(species, n, op.temperature_k);
    b.spin_destruction = spin_destruction_rate(species, n, op.temperature_k);
    b.buffer_gas = buffer_gas_rate(species, gas, op.eta_amg, op.temperature_k);
    b.pumping = pumping_rate(op, species, gas);
    b.dark = RateValue::events(b.wall.events_per_second() + b.spin_exchange.events_per_second() +
                               b.spin_destruction.events_per_second() +
                               b.buffer_gas.events_per_second());
    b.total = RateValue::events(b.dark.events_per_second() + b.pumping.events_per_second());
    return b;
}

double linewidth_from_rates(const RateValue& total_rate, const AlkaliSpecies& species) {
    if (species.gamma_rad_per_s_per_t <= 0.0) {
        throw std::invalid_argument("linewidth_from_rates: gyromagnetic ratio must be positive");
    }
    return total_rate.events_per_second() / species.gamma_rad_per_s_per_t;
}

}  // namespace zfropm
