#include <cmath>
#include <random>

#include "doctest.h"
#include "zfropm/constants.hpp"
#include "zfropm/species.hpp"
#include "zfropm/vapor.hpp"

using namespace zfropm;

namespace {
const AlkaliSpecies rb = AlkaliSpecies::rb85();
const BufferGas n2 = BufferGas::nitrogen();
}  // namespace

TEST_CASE("vapor density matches the correlation at pinned points") {
    // Independently evaluated 10^(4.312 - 4040/T) * 101325 / (kB T).
    CHECK(vapor_density(rb, 369.15) == doctest::Approx(4.6384168645e18).epsilon(1e-9));
    CHECK(vapor_density(rb, 350.0) == doctest::Approx(1.2322764323e18).epsilon(1e-9));
    CHECK(vapor_density(rb, 312.0) == doctest::Approx(5.4295118710e16).epsilon(1e-9));
    CHECK(vapor_density(rb, 550.0) == doctest::Approx(1.2354241732e22).epsilon(1e-9));
}

TEST_CASE("vapor density validity range") {
    CHECK_THROWS_AS((void)vapor_density(rb, 311.99), std::invalid_argument);
    CHECK_THROWS_AS((void)vapor_density(rb, 550.01), std::invalid_argument);
    CHECK_NOTHROW((void)vapor_density(rb, 312.0));
    CHECK_NOTHROW((void)vapor_density(rb, 550.0));
}

TEST_CASE("vapor density grows monotonically with temperature") {
    double prev = 0.0;
    for (double t = 312.0; t <= 550.0; t += 7.0) {
        const double n = vapor_density(rb, t);
        CHECK(n > prev);
        prev = n;
    }
}

TEST_CASE("mean relative speed against the kinetic-theory formula") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> temp(200.0, 600.0);
    std::uniform_real_distribution<double> mass(1.0, 200.0);
    for (int i = 0; i < 50; ++i) {
        const double t = temp(rng);
        const double ma = mass(rng) * constants::amu;
        const double mb = mass(rng) * constants::amu;
        const double mu = ma * mb / (ma + mb);
        const double expected = std::sqrt(8.0 * constants::boltzmann * t / (M_PI * mu));
        CHECK(mean_relative_speed(ma, mb, t) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(mean_relative_speed(mb, ma, t) ==
              doctest::Approx(mean_relative_speed(ma, mb, t)).epsilon(1e-15));
    }
}

TEST_CASE("mean relative speed pinned values") {
    const double m_rb = 84.911789738 * constants::amu;
    const double m_n2 = 28.0134 * constants::amu;
    CHECK(mean_relative_speed(m_rb, m_rb, 369.15) ==
          doctest::Approx(429.0615393309).epsilon(1e-10));
    CHECK(mean_relative_speed(m_rb, m_n2, 369.15) ==
          doctest::Approx(609.1399620199).epsilon(1e-10));
}

TEST_CASE("diffusion coefficient scaling") {
    CHECK(diffusion_coefficient(n2, 1.0, 273.15) == doctest::Approx(0.12e-4).epsilon(1e-14));
    // 1/eta density scaling.
    CHECK(diffusion_coefficient(n2, 2.0, 273.15) ==
          doctest::Approx(0.06e-4).epsilon(1e-14));
    // sqrt(T) thermal scaling.
    CHECK(diffusion_coefficient(n2, 1.0, 4.0 * 273.15) ==
          doctest::Approx(0.24e-4).epsilon(1e-14));
    CHECK_THROWS_AS((void)diffusion_coefficient(n2, 0.0, 300.0), std::invalid_argument);
    CHECK_THROWS_AS((void)diffusion_coefficient(n2, -1.0, 300.0), std::invalid_argument);
}

TEST_CASE("optical line width from buffer density") {
    CHECK(fwhm_from_density(n2, 0.75) == doctest::Approx(13.5e9).epsilon(1e-14));
    CHECK(fwhm_from_density(n2, 1.0) == doctest::Approx(18.0e9).epsilon(1e-14));
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> dist(0.01, 50.0);
    for (int i = 0; i < 20; ++i) {
        const double eta = dist(rng);
        CHECK(density_from_fwhm(n2, fwhm_from_density(n2, eta)) ==
              doctest::Approx(eta).epsilon(1e-14));
    }
}
