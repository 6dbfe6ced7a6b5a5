#pragma once

#include <numbers>
#include <stdexcept>

namespace zfropm {

/// Fundamental constants, SI units throughout.
namespace constants {

/// Classical electron radius [m].
inline constexpr double electron_radius = 2.8179403262e-15;

/// Speed of light in vacuum [m/s].
inline constexpr double speed_of_light = 2.99792458e8;

/// Boltzmann constant [J/K].
inline constexpr double boltzmann = 1.380649e-23;

/// Reduced Planck constant [J s].
inline constexpr double hbar = 1.054571817e-34;

/// Atomic mass unit [kg].
inline constexpr double amu = 1.66053906660e-27;

/// Amagat number density (ideal gas at 273.15 K, 1 atm) [1/m^3].
inline constexpr double amagat_density = 2.6868e25;

/// Euler's number, the "e" of the shot-noise sensitivity formula.
inline constexpr double euler_e = std::numbers::e;

/// Standard atmosphere [Pa], used by the vapor-pressure correlation.
inline constexpr double atmosphere_pa = 101325.0;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace constants

/// Convert a gas density in amagat to a number density [1/m^3].
inline double amagat_to_density(double eta_amg) {
    if (eta_amg < 0.0) {
        throw std::invalid_argument("amagat_to_density: density must be non-negative");
    }
    return eta_amg * constants::amagat_density;
}

/// Convert a number density [1/m^3] to amagat.
inline double density_to_amagat(double n_per_m3) {
    if (n_per_m3 < 0.0) {
        throw std::invalid_argument("density_to_amagat: density must be non-negative");
    }
    return n_per_m3 / constants::amagat_density;
}

inline double celsius_to_kelvin(double t_celsius) {
    if (t_celsius <= -273.15) {
        throw std::invalid_argument("celsius_to_kelvin: temperature at or below absolute zero");
    }
    return t_celsius + 273.15;
}

inline double kelvin_to_celsius(double t_kelvin) {
    if (t_kelvin <= 0.0) {
        throw std::invalid_argument("kelvin_to_celsius: temperature at or below absolute zero");
    }
    return t_kelvin - 273.15;
}

/// Rates appear in two conventions: plain events per second, and the cyclic
/// value X of an angular rate written as 2*pi*X s^-1. A RateValue carries its
/// convention so the choice is visible wherever a rate crosses an interface.
enum class RateConvention { events_per_second, cyclic };

struct RateValue {
    double value = 0.0;
    RateConvention convention = RateConvention::events_per_second;

    static RateValue events(double v) {
        check(v);
        return {v, RateConvention::events_per_second};
    }
    static RateValue cyclic(double v) {
        check(v);
        return {v, RateConvention::cyclic};
    }

    double events_per_second() const {
        return convention == RateConvention::events_per_second ? value
                                                               : value * constants::two_pi;
    }
    double cyclic_value() const {
        return convention == RateConvention::cyclic ? value : value / constants::two_pi;
    }

    RateValue to(RateConvention target) const {
        if (target == convention) return *this;
        return {target == RateConvention::cyclic ? cyclic_value() : events_per_second(), target};
    }

private:
    static void check(double v) {
        if (v < 0.0) throw std::invalid_argument("RateValue: rates must be non-negative");
    }
};

inline RateValue rate_convert(const RateValue& r, RateConvention target) { return r.to(target); }

}  // namespace zfropm
