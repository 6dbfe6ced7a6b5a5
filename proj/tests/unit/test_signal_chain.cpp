#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "zfropm/constants.hpp"
#include "zfropm/signal_chain.hpp"
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

double mean_tail(const TimeSeries& ts, double from_s) {
    const std::size_t k0 =
        static_cast<std::size_t>(from_s * ts.sample_rate_hz);
    double acc = 0.0;
    for (std::size_t k = k0; k < ts.samples.size(); ++k) acc += ts.samples[k];
    return acc / static_cast<double>(ts.samples.size() - k0);
}

double rms_tail(const TimeSeries& ts, double from_s) {
    const std::size_t k0 =
        static_cast<std::size_t>(from_s * ts.sample_rate_hz);
    double acc = 0.0;
    for (std::size_t k = k0; k < ts.samples.size(); ++k) {
        acc += ts.samples[k] * ts.samples[k];
    }
    return std::sqrt(acc / static_cast<double>(ts.samples.size() - k0));
}

// First Fourier cosine coefficient of V(b + m cos(theta)) by Simpson's rule,
// written independently of the library quadrature.
double fourier_a1(const ZfrParams& p, double b_dc, double m) {
    const int n = 4000;  // even
    const double h = constants::two_pi / n;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double theta = k * h;
        const double f = zfr_voltage(p, b_dc + m * std::cos(theta)) * std::cos(theta);
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * f;
    }
    return acc * h / 3.0 / M_PI;
}

}  // namespace

TEST_CASE("pd synthesis reproduces the resonance sample by sample") {
    const ZfrParams p = reference_zfr();
    ModulationSpec mod;
    mod.frequency_hz = 1000.0;
    mod.amplitude_t = 90e-9;
    mod.phase_rad = 0.4;
    mod.dc_offset_t = 30e-9;
    const double fs = 50000.0;
    const TimeSeries ts = synthesize_pd_signal(p, mod, fs, 0.01);
    REQUIRE(ts.samples.size() == 500);
    CHECK(ts.sample_rate_hz == fs);
    for (std::size_t k : {std::size_t{0}, std::size_t{7}, std::size_t{123}, std::size_t{499}}) {
        const double t = static_cast<double>(k) / fs;
        const double b = mod.dc_offset_t +
                         mod.amplitude_t * std::cos(constants::two_pi * mod.frequency_hz * t +
                                                    mod.phase_rad);
        CHECK(ts.samples[k] == doctest::Approx(zfr_voltage(p, b)).epsilon(1e-14));
    }
}

TEST_CASE("pd synthesis is deterministic in the seed") {
    const ZfrParams p = reference_zfr();
    ModulationSpec mod;
    mod.amplitude_t = 90e-9;
    const TimeSeries a = synthesize_pd_signal(p, mod, 10000.0, 0.1, 1e-5, {}, 42);
    const TimeSeries b = synthesize_pd_signal(p, mod, 10000.0, 0.1, 1e-5, {}, 42);
    const TimeSeries c = synthesize_pd_signal(p, mod, 10000.0, 0.1, 1e-5, {}, 43);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
}

TEST_CASE("white noise realizes the requested density") {
    ZfrParams p = reference_zfr();
    ModulationSpec mod;
    mod.amplitude_t = 0.0;
    mod.dc_offset_t = 1e-3;  // far off resonance, the deterministic part is a_v
    const double fs = 10000.0;
    const double asd = 3e-4;
    const TimeSeries ts = synthesize_pd_signal(p, mod, fs, 10.0, asd, {}, 5);
    const double mean = mean_tail(ts, 0.0);
    double var = 0.0;
    for (double v : ts.samples) var += (v - mean) * (v - mean);
    var /= static_cast<double>(ts.samples.size() - 1);
    CHECK(std::sqrt(var) == doctest::Approx(asd * std::sqrt(fs / 2.0)).epsilon(0.01));
    CHECK(mean == doctest::Approx(0.3).epsilon(1e-3));
}

TEST_CASE("lia output sits on the dispersive curve exactly") {
    const DispersiveParams p = reference_disp();
    const TimeSeries ts = synthesize_lia_output(p, 10e-9, {}, 0.0, 2000.0, 0.05);
    for (double v : ts.samples) {
        CHECK(v == doctest::Approx(dispersive_voltage(p, 10e-9)).epsilon(1e-15));
    }
}

TEST_CASE("lia output maps a field tone through the central slope") {
    DispersiveParams p = reference_disp();
    p.delta_b_t = 0.182;  // essentially linear over pT excursions
    ToneSpec tone;
    tone.frequency_hz = 30.0;
    tone.rms_t = 61e-12;
    const TimeSeries ts = synthesize_lia_output(p, 0.0, {tone}, 0.0, 2000.0, 4.0);
    const double slope = slope_at_center(p);
    CHECK(rms_tail(ts, 0.0) == doctest::Approx(slope * tone.rms_t).epsilon(1e-6));
}

TEST_CASE("low pass has unity dc gain and the documented corners") {
    LowPassSpec lp;  // 1 ms, 4 stages
    TimeSeries ts;
    ts.sample_rate_hz = 100000.0;
    ts.samples.assign(20000, 0.7);
    const TimeSeries out = lowpass_filter(ts, lp);
    CHECK(out.samples.back() == doctest::Approx(0.7).epsilon(1e-12));

    const BandwidthResult bw = bandwidth_3db(lp);
    CHECK(bw.per_stage_corner_hz == doctest::Approx(159.154943).epsilon(1e-8));
    CHECK(bw.composite_3db_hz == doctest::Approx(69.229128).epsilon(1e-7));
    CHECK(lowpass_gain(lp, 1e6, bw.composite_3db_hz) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
    CHECK(lowpass_gain(lp, 1e6, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("low pass magnitude response matches a measured tone") {
    LowPassSpec lp;
    const double fs = 100000.0;
    for (double f : {80.0, 500.0, 1591.5}) {
        TimeSeries ts;
        ts.sample_rate_hz = fs;
        const double dur = 0.2;
        ts.samples.resize(static_cast<std::size_t>(fs * dur));
        for (std::size_t k = 0; k < ts.samples.size(); ++k) {
            ts.samples[k] =
                std::sin(constants::two_pi * f * static_cast<double>(k) / fs);
        }
        const TimeSeries out = lowpass_filter(ts, lp);
        // 0.1 s = integer periods of all three test tones.
        const double measured = rms_tail(out, 0.1) * std::sqrt(2.0);
        CHECK(measured == doctest::Approx(lowpass_gain(lp, fs, f)).epsilon(0.003));
    }
}

TEST_CASE("demodulation of a pure tone lands in the right quadrants") {
    const double fs = 200000.0;
    const double fm = 1000.0;
    const double amp = 0.7;
    const double phase = 0.3;
    const double ref_phase = 1.1;
    TimeSeries ts;
    ts.sample_rate_hz = fs;
    ts.samples.resize(static_cast<std::size_t>(fs * 0.12));
    for (std::size_t k = 0; k < ts.samples.size(); ++k) {
        ts.samples[k] =
            amp * std::cos(constants::two_pi * fm * static_cast<double>(k) / fs + phase);
    }
    const DemodOutput out = lockin_demodulate(ts, fm, ref_phase, LowPassSpec{});
    CHECK(mean_tail(out.in_phase, 0.02) ==
          doctest::Approx(amp * std::cos(phase - ref_phase)).epsilon(1e-4));
    CHECK(mean_tail(out.quadrature, 0.02) ==
          doctest::Approx(-amp * std::sin(phase - ref_phase)).epsilon(1e-4));
}

TEST_CASE("quasi static response equals the first Fourier coefficient") {
    const ZfrParams p = reference_zfr();
    ModulationSpec mod;
    mod.frequency_hz = 1000.0;
    mod.amplitude_t = 181e-9;
    for (double b_dc : {-120e-9, -45e-9, 0.0, 30e-9, 95e-9}) {
        const double a1 = fourier_a1(p, b_dc, mod.amplitude_t);
        for (double dphi : {0.0, 0.7, -M_PI / 2.0}) {
            mod.phase_rad = 0.2;
            const auto [x, y] = quasi_static_response(p, mod, b_dc, 0.2 - dphi);
            CHECK(x == doctest::Approx(a1 * std::cos(dphi)).epsilon(5e-7).scale(1.0));
            CHECK(y == doctest::Approx(-a1 * std::sin(dphi)).epsilon(5e-7).scale(1.0));
        }
    }
}

TEST_CASE("time domain demodulation settles onto the quasi static reading") {
    const ZfrParams p = reference_zfr();
    ModulationSpec mod;
    mod.frequency_hz = 1000.0;
    mod.amplitude_t = 181e-9;
    mod.dc_offset_t = 60e-9;
    const double fs = 100000.0;
    const TimeSeries pd = synthesize_pd_signal(p, mod, fs, 0.15);
    const double ref_phase = -M_PI / 2.0;
    const DemodOutput out = lockin_demodulate(pd, mod.frequency_hz, ref_phase, LowPassSpec{});
    const auto [x, y] = quasi_static_response(p, mod, mod.dc_offset_t, ref_phase);
    // 0.05 s skip, then 0.1 s = 100 full modulation periods.
    CHECK(mean_tail(out.in_phase, 0.05) == doctest::Approx(x).epsilon(2e-3).scale(1.0));
    CHECK(mean_tail(out.quadrature, 0.05) == doctest::Approx(y).epsilon(2e-3));
}

TEST_CASE("welch estimate reads a white noise floor") {
    const double fs = 1000.0;
    const double sigma = 0.8;
    GaussianSampler g(97);
    TimeSeries ts;
    ts.sample_rate_hz = fs;
    ts.samples.resize(32768);
    for (double& v : ts.samples) v = sigma * g.next();
    const Spectrum sp = asd_estimate(ts, 1024, 0.5);
    CHECK(sp.resolution_bandwidth_hz == doctest::Approx(fs / 1024.0));
    CHECK(band_median(sp, 50.0, 450.0) ==
          doctest::Approx(sigma * std::sqrt(2.0 / fs)).epsilon(0.03));
}

TEST_CASE("welch estimate integrates an on-bin tone exactly") {
    const double fs = 1000.0;
    const double amp = 0.5;
    TimeSeries ts;
    ts.sample_rate_hz = fs;
    ts.samples.resize(1000);
    for (std::size_t k = 0; k < ts.samples.size(); ++k) {
        ts.samples[k] =
            amp * std::sin(constants::two_pi * 100.0 * static_cast<double>(k) / fs);
    }
    const Spectrum sp = asd_estimate(ts, 1000, 0.5);
    // All tone power falls in the three bins around 100 Hz; the Hann window
    // spectral sums make the integral exact, not approximate.
    CHECK(integrated_rms(sp, 97.0, 103.0) ==
          doctest::Approx(amp / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("welch input validation") {
    TimeSeries ts;
    ts.sample_rate_hz = 100.0;
    ts.samples.resize(64, 0.0);
    CHECK_THROWS_AS((void)asd_estimate(ts, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)asd_estimate(ts, 128, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)asd_estimate(ts, 32, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)asd_estimate(ts, 32, -0.1), std::invalid_argument);
    CHECK_NOTHROW((void)asd_estimate(ts, 64, 0.5));
}

TEST_CASE("spectrum helpers") {
    Spectrum sp;
    sp.resolution_bandwidth_hz = 2.0;
    for (int k = 0; k <= 50; ++k) {
        sp.frequency_hz.push_back(2.0 * k);
        sp.asd_v_per_sqrt_hz.push_back(static_cast<double>(k));
    }
    CHECK(band_median(sp, 10.0, 30.0) == doctest::Approx(10.0));   // bins 5..15
    CHECK(band_median(sp, 10.0, 32.0) == doctest::Approx(10.5));   // even count
    CHECK(spectrum_value_at(sp, 11.0) == doctest::Approx(5.5));
    CHECK(spectrum_value_at(sp, 100.0) == doctest::Approx(50.0));
    CHECK_THROWS_AS((void)spectrum_value_at(sp, 101.0), std::invalid_argument);
    // integrated power = sum(asd^2 * rbw) over bins 5..10.
    double acc = 0.0;
    for (int k = 5; k <= 10; ++k) acc += k * k * 2.0;
    CHECK(integrated_rms(sp, 10.0, 20.0) == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
}

TEST_CASE("equivalent magnetic noise applies the slope conversion") {
    Spectrum sp;
    sp.resolution_bandwidth_hz = 1.0;
    for (int k = 0; k < 100; ++k) {
        sp.frequency_hz.push_back(static_cast<double>(k));
        sp.asd_v_per_sqrt_hz.push_back(70.3e-6);
    }
    const DispersiveParams p = reference_disp();
    CHECK(equivalent_magnetic_noise(sp, p, 10.0) ==
          doctest::Approx(70.3e-6 / slope_at_center(p)).epsilon(1e-12));
}
