#include "zfropm/signal_chain.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "zfropm/constants.hpp"

namespace zfropm {

void TimeSeries::validate() const {
    if (sample_rate_hz <= 0.0) {
        throw std::invalid_argument("TimeSeries: sample rate must be positive");
    }
    if (samples.size() < 2) {
        throw std::invalid_argument("TimeSeries: need at least two samples");
    }
}

void LowPassSpec::validate() const {
    if (time_constant_s <= 0.0) {
        throw std::invalid_argument("LowPassSpec: time constant must be positive");
    }
    if (stages < 1) {
        throw std::invalid_argument("LowPassSpec: need at least one stage");
    }
}

void ModulationSpec::validate() const {
    if (frequency_hz <= 0.0) {
        throw std::invalid_argument("ModulationSpec: frequency must be positive");
    }
    if (amplitude_t < 0.0) {
        throw std::invalid_argument("ModulationSpec: amplitude must be non-negative");
    }
}

double GaussianSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on 53-bit uniforms; u1 shifted into (0, 1] so log is finite.
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
}

namespace {

std::size_t sample_count(double sample_rate_hz, double duration_s) {
    if (sample_rate_hz <= 0.0) {
        throw std::invalid_argument("synthesize: sample rate must be positive");
    }
    if (duration_s <= 0.0) {
        throw std::invalid_argument("synthesize: duration must be positive");
    }
    const double n = std::round(sample_rate_hz * duration_s);
    if (n < 2.0) {
        throw std::invalid_argument("synthesize: duration * sample_rate must be at least 2");
    }
    return static_cast<std::size_t>(n);
}

double tone_field(const std::vector<ToneSpec>& tones, double t) {
    double b = 0.0;
    for (const auto& tone : tones) {
        b += std::numbers::sqrt2 * tone.rms_t *
             std::sin(constants::two_pi * tone.frequency_hz * t);
    }
    return b;
}

void check_tones(const std::vector<ToneSpec>& tones, double sample_rate_hz) {
    for (const auto& tone : tones) {
        if (tone.frequency_hz <= 0.0 || tone.frequency_hz >= sample_rate_hz / 2.0) {
            throw std::invalid_argument("synthesize: tone frequency outside (0, Nyquist)");
        }
        if (tone.rms_t < 0.0) {
            throw std::invalid_argument("synthesize: tone rms must be non-negative");
        }
    }
}

}  // namespace

TimeSeries synthesize_pd_signal(const ZfrParams& zfr, const ModulationSpec& mod,
                                double sample_rate_hz, double duration_s, double noise_asd_v,
                                const std::vector<ToneSpec>& tones, std::uint64_t seed) {
    zfr.validate();
    mod.validate();
    check_tones(tones, sample_rate_hz);
    if (noise_asd_v < 0.0) {
        throw std::invalid_argument("synthesize_pd_signal: noise density must be non-negative");
    }
    const std::size_t n = sample_count(sample_rate_hz, duration_s);

    TimeSeries ts;
    ts.sample_rate_hz = sample_rate_hz;
    ts.samples.resize(n);

    const double omega = constants::two_pi * mod.frequency_hz;
    const double sigma = noise_asd_v * std::sqrt(sample_rate_hz / 2.0);
    GaussianSampler gauss(seed);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / sample_rate_hz;
        double b = mod.dc_offset_t + mod.amplitude_t * std::cos(omega * t + mod.phase_rad) +
                   tone_field(tones, t);
        double v = zfr_voltage(zfr, b);
        if (sigma > 0.0) v += sigma * gauss.next();
        ts.samples[k] = v;
    }
    return ts;
}

TimeSeries synthesize_lia_output(const DispersiveParams& disp, double b_dc_t,
                                 const std::vector<ToneSpec>& tones, double noise_asd_v,
                                 double sample_rate_hz, double duration_s, std::uint64_t seed) {
    disp.validate();
    check_tones(tones, sample_rate_hz);
    if (noise_asd_v < 0.0) {
        throw std::invalid_argument("synthesize_lia_output: noise density must be non-negative");
    }
    const std::size_t n = sample_count(sample_rate_hz, duration_s);

    TimeSeries ts;
    ts.sample_rate_hz = sample_rate_hz;
    ts.samples.resize(n);

    const double sigma = noise_asd_v * std::sqrt(sample_rate_hz / 2.0);
    GaussianSampler gauss(seed);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / sample_rate_hz;
        double v = dispersive_voltage(disp, b_dc_t + tone_field(tones, t));
        if (sigma > 0.0) v += sigma * gauss.next();
        ts.samples[k] = v;
    }
    return ts;
}

TimeSeries lowpass_filter(const TimeSeries& ts, const LowPassSpec& spec) {
    ts.validate();
    spec.validate();
    if (ts.sample_rate_hz * spec.time_constant_s < 10.0) {
        std::fprintf(stderr,
                     "zfropm: warning: lowpass fs*tau = %.3g < 10, discretization is coarse\n",
                     ts.sample_rate_hz * spec.time_constant_s);
    }
    const double alpha = std::exp(-1.0 / (ts.sample_rate_hz * spec.time_constant_s));

    TimeSeries out = ts;
    for (int stage = 0; stage < spec.stages; ++stage) {
        double y = out.samples.front();  // start each stage settled at the first sample
        for (double& sample : out.samples) {
            y = alpha * y + (1.0 - alpha) * sample;
            sample = y;
        }
    }
    return out;
}

double lowpass_gain(const LowPassSpec& spec, double sample_rate_hz, double frequency_hz) {
    spec.validate();
    if (sample_rate_hz <= 0.0) {
        throw std::invalid_argument("lowpass_gain: sample rate must be positive");
    }
    const double alpha = std::exp(-1.0 / (sample_rate_hz * spec.time_constant_s));
    const std::complex<double> z =
        std::polar(1.0, constants::two_pi * frequency_hz / sample_rate_hz);
    const std::complex<double> h = (1.0 - alpha) / (1.0 - alpha / z);
    return std::pow(std::abs(h), spec.stages);
}

DemodOutput lockin_demodulate(const TimeSeries& ts, double ref_frequency_hz,
                              double ref_phase_rad, const LowPassSpec& spec) {
    ts.validate();
    spec.validate();
    if (ref_frequency_hz <= 0.0 || ref_frequency_hz >= ts.sample_rate_hz / 2.0) {
        throw std::invalid_argument("lockin_demodulate: reference must lie in (0, Nyquist)");
    }

    TimeSeries mixed_i = ts;
    TimeSeries mixed_q = ts;
    const double omega = constants::two_pi * ref_frequency_hz;
    for (std::size_t k = 0; k < ts.samples.size(); ++k) {
        const double t = ts.start_time_s + static_cast<double>(k) / ts.sample_rate_hz;
        const double phase = omega * t + ref_phase_rad;
        mixed_i.samples[k] = 2.0 * ts.samples[k] * std::cos(phase);
        mixed_q.samples[k] = 2.0 * ts.samples[k] * std::sin(phase);
    }
    return {lowpass_filter(mixed_i, spec), lowpass_filter(mixed_q, spec)};
}

std::pair<double, double> quasi_static_response(const ZfrParams& zfr, const ModulationSpec& mod,
                                                double b_dc_t, double ref_phase_rad) {
    zfr.validate();
    mod.validate();
    // First Fourier coefficient a1 of V(b_dc + m cos theta) over one
    // modulation cycle, midpoint rule. 4096 points resolves the Lorentzian
    // harmonics to ~1e-13 for modulation indices of interest.
    constexpr int n = 4096;
    double a1 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double theta = (k + 0.5) * constants::two_pi / n;
        a1 += zfr_voltage(zfr, b_dc_t + mod.amplitude_t * std::cos(theta)) * std::cos(theta);
    }
    a1 *= 2.0 / n;
    // The mixer sees the a1 cos(omega t + phase_mod) component; projecting on
    // 2cos/2sin references of phase ref_phase gives these dc readings.
    const double dphi = mod.phase_rad - ref_phase_rad;
    return {a1 * std::cos(dphi), -a1 * std::sin(dphi)};
}

Spectrum asd_estimate(const TimeSeries& ts, std::size_t segment_length,
                      double overlap_fraction) {
    ts.validate();
    if (segment_length < 16) {
        throw std::invalid_argument("asd_estimate: segment length must be at least 16");
    }
    if (segment_length > ts.samples.size()) {
        throw std::invalid_argument("asd_estimate: segment longer than the series");
    }
    if (overlap_fraction < 0.0 || overlap_fraction > 0.95) {
        throw std::invalid_argument("asd_estimate: overlap must lie in [0, 0.95]");
    }

    const std::size_t nseg = segment_length;
    const std::size_t hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(nseg * (1.0 - overlap_fraction))));
    const std::size_t nbins = nseg / 2 + 1;

    std::vector<double> window(nseg);
    double wsum2 = 0.0;
    for (std::size_t k = 0; k < nseg; ++k) {
        window[k] = 0.5 * (1.0 - std::cos(constants::two_pi * k / nseg));
        wsum2 += window[k] * window[k];
    }

    double* in = fftw_alloc_real(nseg);
    fftw_complex* out = fftw_alloc_complex(nbins);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(nseg), in, out, FFTW_ESTIMATE);

    std::vector<double> psd(nbins, 0.0);
    std::size_t count = 0;
    for (std::size_t start = 0; start + nseg <= ts.samples.size(); start += hop) {
        for (std::size_t k = 0; k < nseg; ++k) in[k] = ts.samples[start + k] * window[k];
        fftw_execute(plan);
        for (std::size_t k = 0; k < nbins; ++k) {
            psd[k] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
        }
        ++count;
    }
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);

    const double scale = 1.0 / (static_cast<double>(count) * ts.sample_rate_hz * wsum2);
    Spectrum sp;
    sp.resolution_bandwidth_hz = ts.sample_rate_hz / static_cast<double>(nseg);
    sp.frequency_hz.resize(nbins);
    sp.asd_v_per_sqrt_hz.resize(nbins);
    for (std::size_t k = 0; k < nbins; ++k) {
        double p = psd[k] * scale;
        const bool interior = k != 0 && !(nseg % 2 == 0 && k == nbins - 1);
        if (interior) p *= 2.0;  // one-sided: fold negative frequencies
        sp.frequency_hz[k] = static_cast<double>(k) * sp.resolution_bandwidth_hz;
        sp.asd_v_per_sqrt_hz[k] = std::sqrt(p);
    }
    return sp;
}

namespace {

void check_spectrum_range(const Spectrum& sp, double f_hz) {
    if (sp.frequency_hz.empty()) {
        throw std::invalid_argument("spectrum query: empty spectrum");
    }
    if (f_hz < sp.frequency_hz.front() || f_hz > sp.frequency_hz.back()) {
        throw std::invalid_argument("spectrum query: frequency outside the spectrum range");
    }
}

}  // namespace

double spectrum_value_at(const Spectrum& sp, double f_query_hz) {
    check_spectrum_range(sp, f_query_hz);
    const auto it = std::lower_bound(sp.frequency_hz.begin(), sp.frequency_hz.end(), f_query_hz);
    const std::size_t hi = static_cast<std::size_t>(it - sp.frequency_hz.begin());
    if (hi == 0) return sp.asd_v_per_sqrt_hz.front();
    const std::size_t lo = hi - 1;
    const double f0 = sp.frequency_hz[lo], f1 = sp.frequency_hz[hi];
    const double w = (f_query_hz - f0) / (f1 - f0);
    return (1.0 - w) * sp.asd_v_per_sqrt_hz[lo] + w * sp.asd_v_per_sqrt_hz[hi];
}

double band_median(const Spectrum& sp, double f_lo_hz, double f_hi_hz) {
    std::vector<double> values;
    for (std::size_t k = 0; k < sp.frequency_hz.size(); ++k) {
        if (sp.frequency_hz[k] >= f_lo_hz && sp.frequency_hz[k] <= f_hi_hz) {
            values.push_back(sp.asd_v_per_sqrt_hz[k]);
        }
    }
    if (values.empty()) {
        throw std::invalid_argument("band_median: no spectrum bins in the requested band");
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    if (values.size() % 2 == 0) {
        const double lower = *std::max_element(values.begin(), values.begin() + mid);
        m = 0.5 * (m + lower);
    }
    return m;
}

double integrated_rms(const Spectrum& sp, double f_lo_hz, double f_hi_hz) {
    if (sp.resolution_bandwidth_hz <= 0.0) {
        throw std::invalid_argument("integrated_rms: spectrum lacks a bin width");
    }
    double power = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < sp.frequency_hz.size(); ++k) {
        if (sp.frequency_hz[k] >= f_lo_hz && sp.frequency_hz[k] <= f_hi_hz) {
            power += sp.asd_v_per_sqrt_hz[k] * sp.asd_v_per_sqrt_hz[k] *
                     sp.resolution_bandwidth_hz;
            any = true;
        }
    }
    if (!any) {
        throw std::invalid_argument("integrated_rms: no spectrum bins in the requested band");
    }
    return std::sqrt(power);
}

double equivalent_magnetic_noise(const Spectrum& sp, const DispersiveParams& disp,
                                 double f_query_hz) {
    const double slope = std::abs(slope_at_center(disp));
    if (slope <= 0.0) {
        throw std::invalid_argument("equivalent_magnetic_noise: zero dispersive slope");
    }
    return spectrum_value_at(sp, f_query_hz) / slope;
}

BandwidthResult bandwidth_3db(const LowPassSpec& spec) {
    spec.validate();
    BandwidthResult r;
    r.per_stage_corner_hz = 1.0 / (constants::two_pi * spec.time_constant_s);
    r.composite_3db_hz =
        r.per_stage_corner_hz * std::sqrt(std::pow(2.0, 1.0 / spec.stages) - 1.0);
    return r;
}

}  // namespace zfropm
