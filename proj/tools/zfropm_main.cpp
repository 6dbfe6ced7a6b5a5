#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zfropm/config.hpp"
#include "zfropm/csv_io.hpp"
#include "zfropm/errors.hpp"
#include "zfropm/fitting.hpp"
#include "zfropm/optical.hpp"
#include "zfropm/optimizer.hpp"
#include "zfropm/reference_rates.hpp"
#include "zfropm/relaxation.hpp"
#include "zfropm/signal_chain.hpp"
#include "zfropm/vapor.hpp"
#include "zfropm/version.hpp"
#include "zfropm/zfr.hpp"

namespace {

using namespace zfropm;

Provenance make_provenance(const RunConfig& config) {
    return {version_string, config.hash(), config.sim_seed};
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
}

void apply_scan_spec(RunConfig& config, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--scan: expected var=min:max:scale:n, got '" + spec + "'");
    }
    config.scan_variable = spec.substr(0, eq);
    std::vector<std::string> parts;
    std::string rest = spec.substr(eq + 1);
    std::size_t pos = 0;
    while (true) {
        const auto colon = rest.find(':', pos);
        if (colon == std::string::npos) {
            parts.push_back(rest.substr(pos));
            break;
        }
        parts.push_back(rest.substr(pos, colon - pos));
        pos = colon + 1;
    }
    if (parts.size() != 4) {
        throw ConfigError("--scan: expected var=min:max:scale:n, got '" + spec + "'");
    }
    try {
        config.scan_min = std::stod(parts[0]);
        config.scan_max = std::stod(parts[1]);
    } catch (const std::exception&) {
        throw ConfigError("--scan: bad numeric bound in '" + spec + "'");
    }
    config.scan_scale = parts[2];
    try {
        config.scan_points = std::stoull(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("--scan: bad point count in '" + spec + "'");
    }
    config.validate();
}

void print_rate_line(const char* name, const RateValue& rate) {
    std::printf("  %-16s %14.6g %14.6g\n", name, rate.events_per_second(), rate.cyclic_value());
}

int run_rates(const RunConfig& config, const std::string& out_dir) {
    const AlkaliSpecies sp = config.species();
    const BufferGas gas = config.gas();
    const CellGeometry geom = config.geometry();
    const OperatingPoint op = config.operating_point();
    const RateBudget budget = make_rate_budget(geom, sp, gas, op);

    std::printf("rate budget (T = %.2f K, eta = %g amg, %s)\n", op.temperature_k, op.eta_amg,
                sp.name.c_str());
    std::printf("  %-16s %14s %14s\n", "component", "events_per_s", "cyclic_hz");
    print_rate_line("wall", budget.wall);
    print_rate_line("spin_exchange", budget.spin_exchange);
    print_rate_line("spin_destruction", budget.spin_destruction);
    print_rate_line("buffer_gas", budget.buffer_gas);
    print_rate_line("dark_total", budget.dark);
    print_rate_line("pumping", budget.pumping);
    print_rate_line("total", budget.total);
    std::printf("linewidth_from_rates_t = %.6g\n", linewidth_from_rates(budget.total, sp));

    const OpticalDepthResult depth =
        optical_depth(sp, vapor_density(sp, op.temperature_k), geom.lz_m,
                      op.line_fwhm_rad_per_s > 0.0
                          ? op.line_fwhm_rad_per_s
                          : constants::two_pi * fwhm_from_density(gas, op.eta_amg));
    std::printf("optical_depth_d0 = %.6g\n", depth.d0);

    std::printf("reference deviations (docs/known_deviations.md):\n");
    std::printf("  wall: reported 2pi*%g /s = %.4gx analytic (pi^2 within 0.7%%)\n",
                reference_rates::wall_cyclic, reference_rates::wall_deviation_factor);
    std::printf("  buffer_gas: reported 2pi*%g /s = %.5gx analytic\n",
                reference_rates::buffer_gas_cyclic,
                reference_rates::buffer_gas_deviation_factor);
    std::printf("  pumping: reported 2pi*%g /s = %.5gx analytic\n",
                reference_rates::pumping_cyclic, reference_rates::pumping_deviation_factor);

    if (config.scan_variable == "eta" || config.scan_variable == "temperature") {
        DesignScan scan;
        if (config.scan_variable == "eta") {
            scan = rate_scan(geom, sp, gas, op, config.scan_grid());
        } else {
            scan = temperature_scan(geom, sp, gas, op, config.scan_grid());
        }
        const std::string path = out_path(out_dir, "rate_scan.csv");
        write_design_scan(path, scan, make_provenance(config));
        std::printf("rate_scan_csv = %s\n", path.c_str());
    } else if (config.scan_variable != "none") {
        throw ConfigError("rates: scan variable must be eta or temperature");
    }
    return 0;
}

int run_optimize(const RunConfig& config, const std::string& out_dir) {
    const AlkaliSpecies sp = config.species();
    const BufferGas gas = config.gas();
    const CellGeometry geom = config.geometry();
    const OperatingPoint op = config.operating_point();
    const double n = vapor_density(sp, op.temperature_k);
    const double volume = geom.volume_m3();

    std::printf("mode = %s\n", config.opt_mode.c_str());
    RateValue dark_min;
    double eta_opt = 0.0;
    if (config.opt_mode == "reported") {
        const DensityOptimum opt =
            minimize_dark_rate(reported_coefficients(), config.opt_eta_min, config.opt_eta_max);
        eta_opt = opt.eta_opt_amg;
        dark_min = opt.dark_min;
        if (opt.degenerate) std::printf("degenerate = true\n");
    } else {
        const BufferOptimumResult opt = optimal_buffer_density(
            geom, sp, gas, op.temperature_k, config.opt_eta_min, config.opt_eta_max);
        eta_opt = opt.eta_opt_amg;
        dark_min = opt.dark_min;
        if (opt.degenerate) std::printf("degenerate = true\n");
        std::printf("budget_at_optimum:\n");
        std::printf("  %-16s %14s %14s\n", "component", "events_per_s", "cyclic_hz");
        print_rate_line("wall", opt.budget_at_optimum.wall);
        print_rate_line("spin_exchange", opt.budget_at_optimum.spin_exchange);
        print_rate_line("spin_destruction", opt.budget_at_optimum.spin_destruction);
        print_rate_line("buffer_gas", opt.budget_at_optimum.buffer_gas);
        print_rate_line("dark_total", opt.budget_at_optimum.dark);
    }
    const double delta_b = asn_sensitivity(dark_min, n, volume, op.measurement_time_s,
                                           config.sensitivity_gamma_rad_s_t);
    std::printf("eta_opt_amg = %.6g\n", eta_opt);
    std::printf("gamma_dk_min_per_s = %.6g\n", dark_min.events_per_second());
    std::printf("gamma_dk_min_cyclic_hz = %.6g\n", dark_min.cyclic_value());
    std::printf("delta_b_asn_t_per_sqrt_hz = %.6g\n", delta_b);
    std::printf("formula = (1/gamma) * sqrt(2 * e * Gamma_dk_cyclic / (n * V * t))\n");
    std::printf("n_per_m3 = %.6g\n", n);
    std::printf("volume_m3 = %.6g\n", volume);
    std::printf("time_s = %.6g\n", op.measurement_time_s);
    std::printf("gamma_rad_s_t = %.6g\n", config.sensitivity_gamma_rad_s_t);

    if (config.scan_variable == "volume") {
        const DesignScan scan = sensitivity_vs_volume(
            geom, sp, sp, gas, op.temperature_k, op.measurement_time_s, config.scan_grid(),
            config.opt_mode == "reported" ? CoefficientMode::reported
                                          : CoefficientMode::physical);
        const std::string path = out_path(out_dir, "volume_scan.csv");
        write_design_scan(path, scan, make_provenance(config));
        std::printf("volume_scan_csv = %s\n", path.c_str());
    } else if (config.scan_variable != "none") {
        throw ConfigError("optimize: scan variable must be volume");
    }
    return 0;
}

int run_simulate(const RunConfig& config, const std::string& out_dir, bool sweep) {
    const Provenance prov = make_provenance(config);
    const ZfrParams zfr = config.zfr_params();
    const DispersiveParams disp = config.dispersive_params();
    const ModulationSpec mod = config.modulation();
    const LowPassSpec lp = config.lowpass();

    // noise_asd_v is the demodulator-output floor; the 2cos mixer raises a
    // white detector floor by sqrt(2), so the detector-side injection is
    // noise_asd_v / sqrt(2).
    const double pd_noise = config.noise_asd_v / std::numbers::sqrt2;
    const TimeSeries pd =
        synthesize_pd_signal(zfr, mod, config.sim_sample_rate_hz, config.sim_duration_s,
                             pd_noise, config.tones(), config.sim_seed);
    const DemodOutput demod =
        lockin_demodulate(pd, config.mod_frequency_hz, config.demod_phase_rad, lp);

    // Drop the filter transient before spectral estimation.
    TimeSeries settled = demod.quadrature;
    const std::size_t skip = std::min(
        settled.samples.size() / 10,
        static_cast<std::size_t>(10.0 * lp.time_constant_s * settled.sample_rate_hz));
    settled.samples.erase(settled.samples.begin(),
                          settled.samples.begin() + static_cast<std::ptrdiff_t>(skip));

    if (config.welch_segment > settled.samples.size()) {
        throw ConfigError("welch_segment exceeds the settled record length");
    }
    const Spectrum spectrum =
        asd_estimate(settled, config.welch_segment, config.welch_overlap);

    write_time_series(out_path(out_dir, "pd_series.csv"), pd, prov);
    write_time_series(out_path(out_dir, "lia_quadrature.csv"), demod.quadrature, prov);
    write_spectrum(out_path(out_dir, "lia_asd.csv"), spectrum, prov);

    // Floor estimate: median over the [4, 26] Hz band, each bin referred to
    // the filter input through the known cascade response.
    Spectrum flat = spectrum;
    for (std::size_t k = 0; k < flat.frequency_hz.size(); ++k) {
        const double g = lowpass_gain(lp, config.sim_sample_rate_hz, flat.frequency_hz[k]);
        if (g > 1e-6) flat.asd_v_per_sqrt_hz[k] /= g;
    }
    const double floor_v = band_median(flat, 4.0, 26.0);
    const double slope = slope_at_center(disp);
    std::printf("slope_v_per_t = %.6g\n", slope);
    std::printf("asd_floor_v_per_sqrt_hz = %.6g\n", floor_v);
    std::printf("equivalent_noise_floor_t_per_sqrt_hz = %.6g\n", floor_v / slope);
    std::printf("equivalent_noise_at_query_t_per_sqrt_hz = %.6g\n",
                equivalent_magnetic_noise(spectrum, disp, config.noise_query_hz));
    std::printf("noise_query_hz = %.6g\n", config.noise_query_hz);
    std::printf("bandwidth_per_stage_hz = %.6g\n", bandwidth_3db(lp).per_stage_corner_hz);
    std::printf("bandwidth_composite_hz = %.6g\n", bandwidth_3db(lp).composite_3db_hz);

    if (sweep) {
        // Quasi-static sweep of the demodulated output vs dc field; the
        // file is schema-compatible with `fit --model dispersive`.
        constexpr int points = 241;
        constexpr double span = 600e-9;
        std::vector<double> field(points), voltage(points);
        for (int i = 0; i < points; ++i) {
            const double b = config.zfr_center_t - span + 2.0 * span * i / (points - 1);
            field[i] = b;
            voltage[i] =
                quasi_static_response(zfr, mod, b, config.demod_phase_rad).second;
        }
        const std::string path = out_path(out_dir, "sweep_quadrature.csv");
        write_xy_csv(path, "field_t", "voltage_v", field, voltage, prov);
        std::printf("sweep_csv = %s\n", path.c_str());
    }
    return 0;
}

int run_fit(const RunConfig& config, const std::string& out_dir, const std::string& model_name,
            const std::string& data_path, const std::string& init_spec) {
    const FitModel model =
        fit_model_from_name(model_name.empty() ? config.fit_model : model_name);
    const bool spectral = model == FitModel::absorption;
    const auto [x, y] = read_xy_csv(data_path, spectral ? "freq_hz" : "field_t",
                                    spectral ? "transmission" : "voltage_v");

    std::optional<std::vector<double>> init;
    std::string init_description = "auto";
    if (!init_spec.empty()) {
        std::vector<double> values;
        std::size_t pos = 0;
        while (pos <= init_spec.size()) {
            const auto comma = init_spec.find(',', pos);
            const std::string cell = init_spec.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("--init: bad number '" + cell + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        init = values;
        init_description = init_spec;
    }

    const FitResult fit = fit_curve(model, x, y, init);

    std::vector<std::pair<std::string, std::string>> extras;
    char buf[64];
    if (model == FitModel::dispersive && fit.params[2] != 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17g", 2.0 * fit.params[0] / fit.params[2]);
        extras.emplace_back("slope_v_per_t", buf);
    }
    if (model == FitModel::absorption && fit.converged) {
        std::snprintf(buf, sizeof(buf), "%.17g", derive_pressure(fit, config.gas()));
        extras.emplace_back("derived_eta_amg", buf);
    }

    const std::string result_path =
        out_path(out_dir, "fit_" + fit_model_name(model) + ".txt");
    write_fit_result(result_path, fit, data_path, fnv1a_hex_of_file(data_path),
                     init_description, make_provenance(config), extras);

    std::printf("model = %s\n", fit_model_name(model).c_str());
    std::printf("converged = %s\n", fit.converged ? "true" : "false");
    std::printf("iterations = %d\n", fit.iterations);
    std::printf("residual_rms = %.6g\n", fit.residual_rms);
    const auto& names = fit_param_names(model);
    for (std::size_t k = 0; k < names.size(); ++k) {
        std::printf("param_%s = %.9g +/- %.3g\n", names[k].c_str(), fit.params[k],
                    fit.std_errors[k]);
    }
    for (const auto& [key, value] : extras) {
        std::printf("%s = %s\n", key.c_str(), value.c_str());
    }
    std::printf("result_file = %s\n", result_path.c_str());
    if (!fit.converged) {
        throw NonConvergenceError("fit did not converge: " + fit.message);
    }
    return 0;
}

int run_asd(const RunConfig& config, const std::string& out_dir,
            const std::string& series_path) {
    std::uint64_t series_seed = config.sim_seed;
    const TimeSeries ts = read_time_series(series_path, &series_seed);
    if (config.welch_segment > ts.samples.size()) {
        throw ConfigError("welch_segment exceeds the series length");
    }
    const Spectrum spectrum = asd_estimate(ts, config.welch_segment, config.welch_overlap);
    Provenance prov = make_provenance(config);
    prov.seed = series_seed;
    const std::string path = out_path(out_dir, "asd.csv");
    write_spectrum(path, spectrum, prov);
    std::printf("bins = %zu\n", spectrum.frequency_hz.size());
    std::printf("resolution_bandwidth_hz = %.6g\n", spectrum.resolution_bandwidth_hz);
    std::printf("asd_csv = %s\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-field-resonance OPM model"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", scan_spec, model_name, init_spec;
    std::string fit_data_path, series_path;
    std::uint64_t seed = 0;
    bool sweep = false;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed, "override the configured seed");
    app.add_option("--scan", scan_spec, "scan spec: var=min:max:scale:n");

    CLI::App* rates = app.add_subcommand("rates", "relaxation and pumping rate budget");
    CLI::App* optimize = app.add_subcommand("optimize", "buffer-gas optimum and sensitivity");
    CLI::App* simulate = app.add_subcommand("simulate", "measurement-chain simulation");
    simulate->add_flag("--sweep", sweep, "also write the quasi-static field sweep");
    CLI::App* fit = app.add_subcommand("fit", "least-squares fit of a CSV data file");
    fit->add_option("--model", model_name, "zfr | dispersive | absorption");
    fit->add_option("--init", init_spec, "comma-separated initial parameters");
    fit->add_option("data", fit_data_path, "input CSV")->required();
    CLI::App* asd = app.add_subcommand("asd", "Welch ASD of an existing series file");
    asd->add_option("series", series_path, "input series CSV")->required();

    for (CLI::App* sub : {rates, optimize, simulate, fit, asd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) config = load_config(config_path);
        if (*seed_opt) config.sim_seed = seed;
        if (!scan_spec.empty()) apply_scan_spec(config, scan_spec);
        config.validate();

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory: " + out_dir);

        if (rates->parsed()) return run_rates(config, out_dir);
        if (optimize->parsed()) return run_optimize(config, out_dir);
        if (simulate->parsed()) return run_simulate(config, out_dir, sweep);
        if (fit->parsed()) return run_fit(config, out_dir, model_name, fit_data_path, init_spec);
        if (asd->parsed()) return run_asd(config, out_dir, series_path);
        std::fprintf(stderr, "error: no subcommand\n");
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "schema error: %s\n", e.what());
        return 4;
    } catch (const NonConvergenceError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 5;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
