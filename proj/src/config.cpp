#include "zfropm/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "zfropm/constants.hpp"
#include "zfropm/errors.hpp"

namespace zfropm {

namespace {

constexpr double cm2_to_m2 = 1e-4;

struct KeyBinding {
    enum class Kind { number, integer, text } kind;
    std::function<void(RunConfig&, double)> set_number;
    std::function<void(RunConfig&, std::uint64_t)> set_integer;
    std::function<void(RunConfig&, const std::string&)> set_text;
    std::function<std::string(const RunConfig&)> get;
};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

KeyBinding number_key(double RunConfig::* field) {
    KeyBinding b;
    b.kind = KeyBinding::Kind::number;
    b.set_number = [field](RunConfig& c, double v) { c.*field = v; };
    b.get = [field](const RunConfig& c) { return format_number(c.*field); };
    return b;
}

KeyBinding integer_key(std::uint64_t RunConfig::* field) {
    KeyBinding b;
    b.kind = KeyBinding::Kind::integer;
    b.set_integer = [field](RunConfig& c, std::uint64_t v) { c.*field = v; };
    b.get = [field](const RunConfig& c) { return std::to_string(c.*field); };
    return b;
}

KeyBinding int_key(int RunConfig::* field) {
    KeyBinding b;
    b.kind = KeyBinding::Kind::integer;
    b.set_integer = [field](RunConfig& c, std::uint64_t v) { c.*field = static_cast<int>(v); };
    b.get = [field](const RunConfig& c) { return std::to_string(c.*field); };
    return b;
}

KeyBinding text_key(std::string RunConfig::* field) {
    KeyBinding b;
    b.kind = KeyBinding::Kind::text;
    b.set_text = [field](RunConfig& c, const std::string& v) { c.*field = v; };
    b.get = [field](const RunConfig& c) { return c.*field; };
    return b;
}

// Ordered key table: parse validation, serialization, and hashing all walk
// this single list.
const std::vector<std::pair<std::string, KeyBinding>>& key_table() {
    static const std::vector<std::pair<std::string, KeyBinding>> table = {
        {"species", text_key(&RunConfig::species_preset)},
        {"species_mass_amu", number_key(&RunConfig::species_mass_amu)},
        {"species_nuclear_spin", number_key(&RunConfig::species_nuclear_spin)},
        {"species_f_osc_d1", number_key(&RunConfig::species_f_osc_d1)},
        {"species_gamma_rad_s_t", number_key(&RunConfig::species_gamma_rad_s_t)},
        {"species_vp_a", number_key(&RunConfig::species_vp_a)},
        {"species_vp_b", number_key(&RunConfig::species_vp_b)},
        {"species_sigma_se_cm2", number_key(&RunConfig::species_sigma_se_cm2)},
        {"species_sigma_sd_cm2", number_key(&RunConfig::species_sigma_sd_cm2)},
        {"species_q_se", number_key(&RunConfig::species_q_se)},
        {"sensitivity_gamma_rad_s_t", number_key(&RunConfig::sensitivity_gamma_rad_s_t)},
        {"gas_mass_amu", number_key(&RunConfig::gas_mass_amu)},
        {"gas_sigma_bg_cm2", number_key(&RunConfig::gas_sigma_bg_cm2)},
        {"gas_broadening_ghz_per_amg", number_key(&RunConfig::gas_broadening_ghz_per_amg)},
        {"gas_diffusion_d0_cm2_s", number_key(&RunConfig::gas_diffusion_d0_cm2_s)},
        {"cell_lx_m", number_key(&RunConfig::cell_lx_m)},
        {"cell_ly_m", number_key(&RunConfig::cell_ly_m)},
        {"cell_lz_m", number_key(&RunConfig::cell_lz_m)},
        {"cell_standoff_m", number_key(&RunConfig::cell_standoff_m)},
        {"temperature_c", number_key(&RunConfig::temperature_c)},
        {"eta_amg", number_key(&RunConfig::eta_amg)},
        {"pump_power_w", number_key(&RunConfig::pump_power_w)},
        {"beam_waist_m", number_key(&RunConfig::beam_waist_m)},
        {"transmission", number_key(&RunConfig::transmission)},
        {"pump_frequency_hz", number_key(&RunConfig::pump_frequency_hz)},
        {"measurement_time_s", number_key(&RunConfig::measurement_time_s)},
        {"line_fwhm_ghz", number_key(&RunConfig::line_fwhm_ghz)},
        {"zfr_min_v", number_key(&RunConfig::zfr_min_v)},
        {"zfr_max_v", number_key(&RunConfig::zfr_max_v)},
        {"zfr_center_t", number_key(&RunConfig::zfr_center_t)},
        {"zfr_fwhm_t", number_key(&RunConfig::zfr_fwhm_t)},
        {"disp_amplitude_v", number_key(&RunConfig::disp_amplitude_v)},
        {"disp_center_t", number_key(&RunConfig::disp_center_t)},
        {"disp_fwhm_t", number_key(&RunConfig::disp_fwhm_t)},
        {"sim_sample_rate_hz", number_key(&RunConfig::sim_sample_rate_hz)},
        {"sim_duration_s", number_key(&RunConfig::sim_duration_s)},
        {"sim_seed", integer_key(&RunConfig::sim_seed)},
        {"mod_frequency_hz", number_key(&RunConfig::mod_frequency_hz)},
        {"mod_amplitude_t", number_key(&RunConfig::mod_amplitude_t)},
        {"mod_phase_rad", number_key(&RunConfig::mod_phase_rad)},
        {"field_offset_t", number_key(&RunConfig::field_offset_t)},
        {"demod_phase_rad", number_key(&RunConfig::demod_phase_rad)},
        {"lp_time_constant_s", number_key(&RunConfig::lp_time_constant_s)},
        {"lp_stages", int_key(&RunConfig::lp_stages)},
        {"noise_asd_v", number_key(&RunConfig::noise_asd_v)},
        {"tone_frequency_hz", number_key(&RunConfig::tone_frequency_hz)},
        {"tone_rms_t", number_key(&RunConfig::tone_rms_t)},
        {"welch_segment", integer_key(&RunConfig::welch_segment)},
        {"welch_overlap", number_key(&RunConfig::welch_overlap)},
        {"noise_query_hz", number_key(&RunConfig::noise_query_hz)},
        {"scan_variable", text_key(&RunConfig::scan_variable)},
        {"scan_min", number_key(&RunConfig::scan_min)},
        {"scan_max", number_key(&RunConfig::scan_max)},
        {"scan_points", integer_key(&RunConfig::scan_points)},
        {"scan_scale", text_key(&RunConfig::scan_scale)},
        {"opt_eta_min", number_key(&RunConfig::opt_eta_min)},
        {"opt_eta_max", number_key(&RunConfig::opt_eta_max)},
        {"opt_mode", text_key(&RunConfig::opt_mode)},
        {"fit_model", text_key(&RunConfig::fit_model)},
    };
    return table;
}

const KeyBinding* find_key(const std::string& key) {
    for (const auto& [name, binding] : key_table()) {
        if (name == key) return &binding;
    }
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
    }
    if (used != value.size() || !std::isfinite(v)) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
    }
    return v;
}

std::uint64_t parse_integer(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    if (value.empty() || !std::isdigit(static_cast<unsigned char>(value.front()))) {
        throw ConfigError("config: bad integer value for " + key + ": '" + value + "'");
    }
    try {
        v = std::stoull(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + value + "'");
    }
    if (used != value.size()) {
        throw ConfigError("config: bad integer value for " + key + ": '" + value + "'");
    }
    return v;
}

void apply_species_preset(RunConfig& c, const std::string& preset) {
    const AlkaliSpecies sp = preset == "Rb87" ? AlkaliSpecies::rb87() : AlkaliSpecies::rb85();
    if (preset != "Rb85" && preset != "Rb87") {
        throw ConfigError("config: unknown species preset '" + preset +
                          "' (expected Rb85 or Rb87)");
    }
    c.species_preset = preset;
    c.species_mass_amu = sp.mass_kg / constants::amu;
    c.species_nuclear_spin = sp.nuclear_spin;
    c.species_f_osc_d1 = sp.f_osc_d1;
    c.species_gamma_rad_s_t = sp.gamma_rad_per_s_per_t;
    c.species_vp_a = sp.vp_a;
    c.species_vp_b = sp.vp_b;
    c.species_sigma_se_cm2 = sp.sigma_se_m2 / cm2_to_m2;
    c.species_sigma_sd_cm2 = sp.sigma_sd_m2 / cm2_to_m2;
    c.species_q_se = sp.q_se;
}

}  // namespace

AlkaliSpecies RunConfig::species() const {
    AlkaliSpecies sp;
    sp.name = species_preset;
    sp.mass_kg = species_mass_amu * constants::amu;
    sp.nuclear_spin = species_nuclear_spin;
    sp.f_osc_d1 = species_f_osc_d1;
    sp.gamma_rad_per_s_per_t = species_gamma_rad_s_t;
    sp.vp_a = species_vp_a;
    sp.vp_b = species_vp_b;
    sp.sigma_se_m2 = species_sigma_se_cm2 * cm2_to_m2;
    sp.sigma_sd_m2 = species_sigma_sd_cm2 * cm2_to_m2;
    sp.q_se = species_q_se;
    return sp;
}

BufferGas RunConfig::gas() const {
    BufferGas g;
    g.name = "N2";
    g.mass_kg = gas_mass_amu * constants::amu;
    g.sigma_alkali_m2 = gas_sigma_bg_cm2 * cm2_to_m2;
    g.broadening_hz_per_amg = gas_broadening_ghz_per_amg * 1e9;
    g.diffusion_d0_m2_per_s = gas_diffusion_d0_cm2_s * 1e-4;
    return g;
}

CellGeometry RunConfig::geometry() const {
    return {cell_lx_m, cell_ly_m, cell_lz_m, cell_standoff_m};
}

OperatingPoint RunConfig::operating_point() const {
    OperatingPoint op;
    op.temperature_k = celsius_to_kelvin(temperature_c);
    op.eta_amg = eta_amg;
    op.pump_power_w = pump_power_w;
    op.beam_waist_m = beam_waist_m;
    op.transmission = transmission;
    op.pump_frequency_hz = pump_frequency_hz;
    op.measurement_time_s = measurement_time_s;
    op.line_fwhm_rad_per_s = constants::two_pi * line_fwhm_ghz * 1e9;
    return op;
}

ZfrParams RunConfig::zfr_params() const {
    return {zfr_min_v, zfr_max_v, zfr_center_t, zfr_fwhm_t};
}

DispersiveParams RunConfig::dispersive_params() const {
    return {disp_amplitude_v, disp_center_t, disp_fwhm_t};
}

ModulationSpec RunConfig::modulation() const {
    return {mod_frequency_hz, mod_amplitude_t, field_offset_t, mod_phase_rad};
}

LowPassSpec RunConfig::lowpass() const { return {lp_time_constant_s, lp_stages}; }

std::vector<ToneSpec> RunConfig::tones() const {
    if (tone_frequency_hz > 0.0 && tone_rms_t > 0.0) {
        return {{tone_frequency_hz, tone_rms_t}};
    }
    return {};
}

std::vector<double> RunConfig::scan_grid() const {
    if (scan_points < 2) throw ConfigError("config: scan_points must be at least 2");
    if (!(scan_min > 0.0) && scan_scale == "log") {
        throw ConfigError("config: log scan requires scan_min > 0");
    }
    if (!(scan_max > scan_min)) throw ConfigError("config: scan_max must exceed scan_min");
    std::vector<double> grid(scan_points);
    const std::size_t n = grid.size();
    if (scan_scale == "log") {
        const double llo = std::log(scan_min), lhi = std::log(scan_max);
        for (std::size_t i = 0; i < n; ++i) {
            grid[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
        }
        grid.front() = scan_min;
        grid.back() = scan_max;
    } else if (scan_scale == "linear") {
        for (std::size_t i = 0; i < n; ++i) {
            grid[i] = scan_min + (scan_max - scan_min) * i / (n - 1);
        }
    } else {
        throw ConfigError("config: scan_scale must be log or linear");
    }
    return grid;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (species_preset != "Rb85" && species_preset != "Rb87") {
        fail("species must be Rb85 or Rb87");
    }
    if (species_mass_amu <= 0.0) fail("species_mass_amu must be positive");
    if (species_f_osc_d1 <= 0.0 || species_f_osc_d1 >= 1.0) fail("species_f_osc_d1 must lie in (0, 1)");
    if (species_gamma_rad_s_t <= 0.0) fail("species_gamma_rad_s_t must be positive");
    if (species_sigma_se_cm2 <= 0.0 || species_sigma_sd_cm2 <= 0.0) fail("cross sections must be positive");
    if (species_q_se <= 0.0 || species_q_se > 1.0) fail("species_q_se must lie in (0, 1]");
    if (sensitivity_gamma_rad_s_t <= 0.0) fail("sensitivity_gamma_rad_s_t must be positive");
    if (gas_mass_amu <= 0.0) fail("gas_mass_amu must be positive");
    if (gas_sigma_bg_cm2 <= 0.0) fail("gas_sigma_bg_cm2 must be positive");
    if (gas_broadening_ghz_per_amg <= 0.0) fail("gas_broadening_ghz_per_amg must be positive");
    if (gas_diffusion_d0_cm2_s <= 0.0) fail("gas_diffusion_d0_cm2_s must be positive");
    if (cell_lx_m <= 0.0 || cell_ly_m <= 0.0 || cell_lz_m <= 0.0) fail("cell dimensions must be positive");
    if (cell_standoff_m < 0.0) fail("cell_standoff_m must be non-negative");
    if (temperature_c <= -273.15) fail("temperature_c below absolute zero");
    if (eta_amg <= 0.0) fail("eta_amg must be positive");
    if (pump_power_w < 0.0) fail("pump_power_w must be non-negative");
    if (beam_waist_m <= 0.0) fail("beam_waist_m must be positive");
    if (transmission < 0.0 || transmission > 1.0) fail("transmission must lie in [0, 1]");
    if (pump_frequency_hz <= 0.0) fail("pump_frequency_hz must be positive");
    if (measurement_time_s <= 0.0) fail("measurement_time_s must be positive");
    if (line_fwhm_ghz < 0.0) fail("line_fwhm_ghz must be non-negative");
    if (zfr_fwhm_t <= 0.0) fail("zfr_fwhm_t must be positive");
    if (zfr_max_v < zfr_min_v) fail("zfr_max_v must be at least zfr_min_v");
    if (disp_fwhm_t <= 0.0) fail("disp_fwhm_t must be positive");
    if (sim_sample_rate_hz <= 0.0) fail("sim_sample_rate_hz must be positive");
    if (sim_duration_s <= 0.0) fail("sim_duration_s must be positive");
    if (sim_sample_rate_hz * sim_duration_s < 2.0) fail("simulation must cover at least 2 samples");
    if (mod_frequency_hz <= 0.0) fail("mod_frequency_hz must be positive");
    if (mod_frequency_hz >= sim_sample_rate_hz / 2.0) fail("mod_frequency_hz must be below Nyquist");
    if (mod_amplitude_t < 0.0) fail("mod_amplitude_t must be non-negative");
    if (lp_time_constant_s <= 0.0) fail("lp_time_constant_s must be positive");
    if (lp_stages < 1) fail("lp_stages must be at least 1");
    if (noise_asd_v < 0.0) fail("noise_asd_v must be non-negative");
    if (tone_frequency_hz < 0.0) fail("tone_frequency_hz must be non-negative");
    if (tone_frequency_hz > 0.0 && tone_frequency_hz >= sim_sample_rate_hz / 2.0) {
        fail("tone_frequency_hz must be below Nyquist");
    }
    if (tone_rms_t < 0.0) fail("tone_rms_t must be non-negative");
    if (welch_segment < 16) fail("welch_segment must be at least 16");
    if (static_cast<double>(welch_segment) > sim_sample_rate_hz * sim_duration_s) {
        fail("welch_segment exceeds the simulated record length");
    }
    if (welch_overlap < 0.0 || welch_overlap > 0.95) fail("welch_overlap must lie in [0, 0.95]");
    if (noise_query_hz <= 0.0) fail("noise_query_hz must be positive");
    if (scan_variable != "none" && scan_variable != "eta" && scan_variable != "temperature" &&
        scan_variable != "volume") {
        fail("scan_variable must be none, eta, temperature, or volume");
    }
    if (scan_scale != "log" && scan_scale != "linear") fail("scan_scale must be log or linear");
    if (scan_variable != "none") scan_grid();  // validates min/max/points
    if (!(opt_eta_min > 0.0) || !(opt_eta_max > opt_eta_min) || opt_eta_max > 1000.0) {
        fail("optimizer range must satisfy 0 < opt_eta_min < opt_eta_max <= 1000");
    }
    if (opt_mode != "physical" && opt_mode != "reported") fail("opt_mode must be physical or reported");
    if (fit_model != "zfr" && fit_model != "dispersive" && fit_model != "absorption") {
        fail("fit_model must be zfr, dispersive, or absorption");
    }
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    for (const auto& [name, binding] : key_table()) {
        out << name << " = " << binding.get(*this) << "\n";
    }
    return out.str();
}

std::string RunConfig::hash() const {
    const std::string text = serialize();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_config(const std::string& text) {
    // Collect key/value pairs first: the species preset must be applied
    // before any species_* override, wherever it sits in the file.
    std::vector<std::pair<std::string, std::string>> entries;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        if (!find_key(key)) {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" +
                              key + "'");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        }
        entries.emplace_back(key, value);
    }

    RunConfig config;
    for (const auto& [key, value] : entries) {
        if (key == "species") apply_species_preset(config, value);
    }
    for (const auto& [key, value] : entries) {
        if (key == "species") continue;
        const KeyBinding* binding = find_key(key);
        switch (binding->kind) {
            case KeyBinding::Kind::number:
                binding->set_number(config, parse_number(key, value));
                break;
            case KeyBinding::Kind::integer:
                binding->set_integer(config, parse_integer(key, value));
                break;
            case KeyBinding::Kind::text:
                binding->set_text(config, value);
                break;
        }
    }
    config.validate();
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace zfropm
