#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zfropm/geometry.hpp"
#include "zfropm/signal_chain.hpp"
#include "zfropm/species.hpp"
#include "zfropm/zfr.hpp"

namespace zfropm {

/// Flat key = value run configuration. Every field has a documented default
/// matching the reference configuration; unknown keys are an error. The
/// `species` preset (Rb85 | Rb87) is applied before any species_* override,
/// regardless of where it appears in the file.
struct RunConfig {
    // Species (defaults: Rb85 preset).
    std::string species_preset = "Rb85";
    double species_mass_amu = 84.911789738;
    double species_nuclear_spin = 2.5;
    double species_f_osc_d1 = 0.3423;
    double species_gamma_rad_s_t = 2.9327e10;
    double species_vp_a = 4.312;
    double species_vp_b = 4040.0;
    double species_sigma_se_cm2 = 1.9e-14;
    double species_sigma_sd_cm2 = 1.6e-17;
    double species_q_se = 5.0 / 27.0;

    /// Gyromagnetic ratio used in the Eq.-B1 sensitivity (pump species).
    double sensitivity_gamma_rad_s_t = 4.3966e10;

    // Buffer gas (N2).
    double gas_mass_amu = 28.0134;
    double gas_sigma_bg_cm2 = 1.0e-22;
    double gas_broadening_ghz_per_amg = 18.0;
    double gas_diffusion_d0_cm2_s = 0.12;

    // Cell geometry.
    double cell_lx_m = 500e-6;
    double cell_ly_m = 500e-6;
    double cell_lz_m = 9e-3;
    double cell_standoff_m = 750e-6;

    // Operating point.
    double temperature_c = 96.0;
    double eta_amg = 0.75;
    double pump_power_w = 55e-6;
    double beam_waist_m = 250e-6;
    double transmission = 1.0;
    double pump_frequency_hz = 3.77e14;
    double measurement_time_s = 0.5;
    double line_fwhm_ghz = 0.0;  ///< 0 = derive from eta via the broadening coefficient.

    // Resonance line shapes.
    double zfr_min_v = 0.3;
    double zfr_max_v = 9.3;
    double zfr_center_t = 0.0;
    double zfr_fwhm_t = 181e-9;
    double disp_amplitude_v = 6.4;
    double disp_center_t = 0.0;
    double disp_fwhm_t = 182e-9;

    // Measurement-chain simulation.
    double sim_sample_rate_hz = 50000.0;
    double sim_duration_s = 32.0;
    std::uint64_t sim_seed = 1;
    double mod_frequency_hz = 1000.0;
    double mod_amplitude_t = 181e-9;
    double mod_phase_rad = 0.0;
    double field_offset_t = 0.0;
    double demod_phase_rad = -1.5707963267948966;  ///< Signal lands in quadrature.
    double lp_time_constant_s = 1e-3;
    int lp_stages = 4;
    /// White noise floor referred to the demodulator output [V/sqrt(Hz)].
    double noise_asd_v = 70.3e-6;
    double tone_frequency_hz = 30.0;
    double tone_rms_t = 61e-12;
    std::uint64_t welch_segment = 25000;
    double welch_overlap = 0.5;
    double noise_query_hz = 10.0;

    // Scan definition (activated by --scan or scan_variable).
    std::string scan_variable = "none";  ///< none | eta | temperature | volume.
    double scan_min = 0.05;
    double scan_max = 100.0;
    std::uint64_t scan_points = 200;
    std::string scan_scale = "log";  ///< log | linear.

    // Optimizer settings.
    double opt_eta_min = 0.05;
    double opt_eta_max = 100.0;
    std::string opt_mode = "physical";  ///< physical | reported.

    /// Default model for `fit` when --model is not given.
    std::string fit_model = "dispersive";

    // Derived views -----------------------------------------------------

    AlkaliSpecies species() const;
    BufferGas gas() const;
    CellGeometry geometry() const;
    OperatingPoint operating_point() const;
    ZfrParams zfr_params() const;
    DispersiveParams dispersive_params() const;
    ModulationSpec modulation() const;
    LowPassSpec lowpass() const;
    std::vector<ToneSpec> tones() const;
    std::vector<double> scan_grid() const;

    /// Throws ConfigError when any field is out of range.
    void validate() const;

    /// Canonical text form: every key in a fixed order, full precision.
    std::string serialize() const;

    /// FNV-1a 64-bit hash of serialize(), as 16 hex digits.
    std::string hash() const;
};

/// Parse config text; keys not in RunConfig are errors (ConfigError), as are
/// duplicates and malformed numbers. `#` starts a comment.
RunConfig parse_config(const std::string& text);

/// Load and parse a config file (IoError when unreadable).
RunConfig load_config(const std::string& path);

}  // namespace zfropm
