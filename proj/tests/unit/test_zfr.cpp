#include <cmath>

#include "doctest.h"
#include "zfropm/zfr.hpp"

using namespace zfropm;

namespace {

ZfrParams reference_zfr() {
    ZfrParams p;
    p.a_v = 0.3;
    p.b_v = 9.3;
    p.b0_t = 0.0;
    p.delta_b_t = 181e-9;
    return p;
}

DispersiveParams reference_disp() {
    DispersiveParams p;
    p.u_v = 6.4;
    p.b0_t = 0.0;
    p.delta_b_t = 182e-9;
    return p;
}

}  // namespace

TEST_CASE("absorptive resonance anchor points") {
    const ZfrParams p = reference_zfr();
    CHECK(zfr_voltage(p, 0.0) == doctest::Approx(9.3).epsilon(1e-15));
    // Half maximum sits at b0 +/- FWHM/2.
    CHECK(zfr_voltage(p, 90.5e-9) == doctest::Approx((0.3 + 9.3) / 2.0).epsilon(1e-13));
    CHECK(zfr_voltage(p, -90.5e-9) == doctest::Approx((0.3 + 9.3) / 2.0).epsilon(1e-13));
    // Wings approach the baseline.
    CHECK(zfr_voltage(p, 1.0) == doctest::Approx(0.3).epsilon(1e-8));
    // Even about the center.
    for (double x = 10e-9; x < 400e-9; x += 37e-9) {
        CHECK(zfr_voltage(p, x) == doctest::Approx(zfr_voltage(p, -x)).epsilon(1e-15));
    }
}

TEST_CASE("absorptive resonance with shifted center") {
    ZfrParams p = reference_zfr();
    p.b0_t = 55e-9;
    CHECK(zfr_voltage(p, 55e-9) == doctest::Approx(9.3).epsilon(1e-15));
    CHECK(zfr_voltage(p, 55e-9 + 90.5e-9) == doctest::Approx(4.8).epsilon(1e-13));
}

TEST_CASE("dispersive resonance anchor points") {
    const DispersiveParams p = reference_disp();
    CHECK(dispersive_voltage(p, 0.0) == 0.0);
    // Extrema of u/2 at b0 +/- FWHM/2.
    CHECK(dispersive_voltage(p, 91e-9) == doctest::Approx(3.2).epsilon(1e-13));
    CHECK(dispersive_voltage(p, -91e-9) == doctest::Approx(-3.2).epsilon(1e-13));
    // Odd about the center.
    for (double x = 5e-9; x < 500e-9; x += 41e-9) {
        CHECK(dispersive_voltage(p, x) ==
              doctest::Approx(-dispersive_voltage(p, -x)).epsilon(1e-15));
    }
}

TEST_CASE("central slope matches a numeric derivative") {
    const DispersiveParams p = reference_disp();
    const double h = 1e-12;
    // Five-point stencil around the center.
    const double num = (-dispersive_voltage(p, 2 * h) + 8 * dispersive_voltage(p, h) -
                        8 * dispersive_voltage(p, -h) + dispersive_voltage(p, -2 * h)) /
                       (12 * h);
    CHECK(slope_at_center(p) == doctest::Approx(num).epsilon(1e-9));
    CHECK(slope_at_center(p) == doctest::Approx(2.0 * 6.4 / 182e-9).epsilon(1e-15));
}

TEST_CASE("sharpness definition and narrow-line preference") {
    const ZfrParams p = reference_zfr();
    CHECK(sharpness(p) == doctest::Approx((9.3 - 0.3) / 181e-9).epsilon(1e-14));
    // At fixed contrast the narrower line is sharper.
    ZfrParams narrow = p;
    narrow.delta_b_t = 0.5 * p.delta_b_t;
    CHECK(sharpness(narrow) == doctest::Approx(2.0 * sharpness(p)).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    ZfrParams p = reference_zfr();
    p.delta_b_t = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_zfr();
    p.b_v = p.a_v - 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    DispersiveParams d = reference_disp();
    d.delta_b_t = -1e-9;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}
