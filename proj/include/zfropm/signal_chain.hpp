#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "zfropm/zfr.hpp"

namespace zfropm {

/// Uniformly sampled voltage record.
struct TimeSeries {
    double sample_rate_hz = 0.0;
    double start_time_s = 0.0;
    std::vector<double> samples;

    void validate() const;
};

/// Cascade of identical discrete one-pole sections. Four 1 ms stages realize
/// the LIA's "24 dB/oct, 1 ms" setting.
struct LowPassSpec {
    double time_constant_s = 1e-3;
    int stages = 4;

    void validate() const;
};

/// Field modulation B(t) = dc + amplitude * cos(2 pi f t + phase) along x.
struct ModulationSpec {
    double frequency_hz = 1000.0;
    double amplitude_t = 181e-9;
    double dc_offset_t = 0.0;
    double phase_rad = 0.0;

    void validate() const;
};

/// Calibration tone: a sinusoidal field of given rms amplitude.
struct ToneSpec {
    double frequency_hz = 0.0;
    double rms_t = 0.0;
};

/// One-sided amplitude spectral density.
struct Spectrum {
    std::vector<double> frequency_hz;
    std::vector<double> asd_v_per_sqrt_hz;
    /// Bin spacing of the Welch grid [Hz].
    double resolution_bandwidth_hz = 0.0;
};

/// Deterministic standard-normal stream: mt19937_64 plus Box-Muller on
/// 53-bit uniforms. The transform is pinned here (not delegated to
/// std::normal_distribution) so identical seeds give identical bytes on
/// every platform.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}
    double next();

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct DemodOutput {
    TimeSeries in_phase;
    TimeSeries quadrature;
};

/// Photodetector record of the modulated resonance:
/// v[k] = V_zfr(B(t_k)) + noise, with
/// B(t) = dc + amp cos(2 pi f_m t + phase) + sum_i sqrt(2) rms_i sin(2 pi f_i t).
/// noise_asd_v is a white voltage noise density [V/sqrt(Hz)] at the detector,
/// realized with sigma = noise_asd_v * sqrt(fs/2); same seed, same bytes.
TimeSeries synthesize_pd_signal(const ZfrParams& zfr, const ModulationSpec& mod,
                                double sample_rate_hz, double duration_s,
                                double noise_asd_v = 0.0,
                                const std::vector<ToneSpec>& tones = {},
                                std::uint64_t seed = 0);

/// Direct record of a demodulated output sitting on the dispersive working
/// point: v[k] = V_Q(b_dc + tones(t_k)) + white noise of density noise_asd_v.
/// This is the measurement plane of the sensitivity analysis; no filter is
/// applied, so tone and floor conversions through the central slope are exact.
TimeSeries synthesize_lia_output(const DispersiveParams& disp, double b_dc_t,
                                 const std::vector<ToneSpec>& tones, double noise_asd_v,
                                 double sample_rate_hz, double duration_s,
                                 std::uint64_t seed = 0);

/// y[k] = alpha y[k-1] + (1 - alpha) x[k] per stage, alpha = exp(-1/(fs tau)).
/// Unity dc gain for any stage count. Warns on stderr when fs*tau < 10.
TimeSeries lowpass_filter(const TimeSeries& ts, const LowPassSpec& spec);

/// Magnitude response of the discrete cascade at frequency f.
double lowpass_gain(const LowPassSpec& spec, double sample_rate_hz, double frequency_hz);

/// Mix with 2 cos(2 pi f_ref t + phase) and 2 sin(...), then low-pass both.
/// The factor 2 makes a phase-aligned tone of amplitude A read A in-phase.
DemodOutput lockin_demodulate(const TimeSeries& ts, double ref_frequency_hz,
                              double ref_phase_rad, const LowPassSpec& spec);

/// Steady-state demodulator reading for a static offset field: the dc value
/// the (in_phase, quadrature) pair settles to when the PD signal is the
/// modulated resonance at fixed b_dc. Computed from the first Fourier
/// coefficient of V(b_dc + m cos theta) by midpoint quadrature.
std::pair<double, double> quasi_static_response(const ZfrParams& zfr, const ModulationSpec& mod,
                                                double b_dc_t, double ref_phase_rad);

/// One-sided Welch ASD: Hann window, mean over segments advanced by
/// segment_length * (1 - overlap), PSD normalized by fs * sum(w^2) with the
/// one-sided factor 2 (DC and Nyquist unscaled). White noise of std sigma
/// reads sigma * sqrt(2/fs); a tone of amplitude A integrates to power A^2/2.
Spectrum asd_estimate(const TimeSeries& ts, std::size_t segment_length,
                      double overlap_fraction = 0.5);

/// ASD value at f_query [V/sqrt(Hz)], linear interpolation between bins.
double spectrum_value_at(const Spectrum& sp, double f_query_hz);

/// Median ASD over bins with f_lo <= f <= f_hi; robust floor estimate.
double band_median(const Spectrum& sp, double f_lo_hz, double f_hi_hz);

/// sqrt of the integrated PSD over [f_lo, f_hi]: rms voltage in the band.
double integrated_rms(const Spectrum& sp, double f_lo_hz, double f_hi_hz);

/// Eq.-3 conversion: voltage ASD at f_query divided by the central slope
/// 2u/dB of the dispersive working point -> magnetic ASD [T/sqrt(Hz)].
double equivalent_magnetic_noise(const Spectrum& sp, const DispersiveParams& disp,
                                 double f_query_hz);

struct BandwidthResult {
    double per_stage_corner_hz = 0.0;  ///< 1/(2 pi tau).
    double composite_3db_hz = 0.0;     ///< corner * sqrt(2^(1/stages) - 1).
};

BandwidthResult bandwidth_3db(const LowPassSpec& spec);

}  // namespace zfropm
