#include "zfropm/zfr.hpp"

namespace zfropm {

double zfr_voltage(const ZfrParams& p, double b_t) {
    p.validate();
    const double x = b_t - p.b0_t;
    const double hw2 = p.delta_b_t * p.delta_b_t / 4.0;
    return p.a_v + (p.b_v - p.a_v) * hw2 / (x * x + hw2);
}

double dispersive_voltage(const DispersiveParams& p, double b_t) {
    p.validate();
    const double x = b_t - p.b0_t;
    const double hw2 = p.delta_b_t * p.delta_b_t / 4.0;
    return 0.5 * p.u_v * x * p.delta_b_t / (x * x + hw2);
}

double sharpness(const ZfrParams& p) {
    p.validate();
    return (p.b_v - p.a_v) / p.delta_b_t;
}

double slope_at_center(const DispersiveParams& p) {
    p.validate();
    return 2.0 * p.u_v / p.delta_b_t;
}

}  // namespace zfropm
