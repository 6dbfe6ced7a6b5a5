#include "zfropm/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zfropm/errors.hpp"

namespace zfropm {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read file: " + path);
    return in;
}

void write_provenance(std::ofstream& out, const Provenance& prov) {
    out << "# zfropm_version=" << prov.version << "\n";
    out << "# config_hash=" << prov.config_hash << "\n";
    out << "# seed=" << prov.seed << "\n";
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& cell, const std::string& path, int lineno) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        throw SchemaError(path + " line " + std::to_string(lineno) + ": non-numeric cell '" +
                          cell + "'");
    }
    if (used != cell.size() || !std::isfinite(v)) {
        throw SchemaError(path + " line " + std::to_string(lineno) + ": non-numeric cell '" +
                          cell + "'");
    }
    return v;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fnv1a_hex_of_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a_hex(buffer.str());
}

void write_time_series(const std::string& path, const TimeSeries& ts, const Provenance& prov) {
    ts.validate();
    std::ofstream out = open_out(path);
    write_provenance(out, prov);
    out << "# sample_rate_hz=" << num(ts.sample_rate_hz) << " seed=" << prov.seed << "\n";
    for (double v : ts.samples) out << num(v) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

TimeSeries read_time_series(const std::string& path, std::uint64_t* seed_out) {
    std::ifstream in = open_in(path);
    TimeSeries ts;
    bool have_rate = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped[0] == '#') {
            std::istringstream header(stripped.substr(1));
            std::string token;
            while (header >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = token.substr(0, eq);
                const std::string value = token.substr(eq + 1);
                if (key == "sample_rate_hz") {
                    ts.sample_rate_hz = parse_cell(value, path, lineno);
                    have_rate = true;
                } else if (key == "seed" && seed_out) {
                    try {
                        *seed_out = std::stoull(value);
                    } catch (const std::exception&) {
                        throw SchemaError(path + " line " + std::to_string(lineno) +
                                          ": bad seed value");
                    }
                }
            }
            continue;
        }
        ts.samples.push_back(parse_cell(stripped, path, lineno));
    }
    if (!have_rate) {
        throw SchemaError(path + ": missing '# sample_rate_hz=' header");
    }
    if (ts.samples.size() < 2) {
        throw SchemaError(path + ": need at least two samples");
    }
    return ts;
}

void write_spectrum(const std::string& path, const Spectrum& sp, const Provenance& prov) {
    std::ofstream out = open_out(path);
    write_provenance(out, prov);
    out << "# resolution_bandwidth_hz=" << num(sp.resolution_bandwidth_hz) << "\n";
    out << "freq_hz,asd_v_per_sqrt_hz\n";
    for (std::size_t k = 0; k < sp.frequency_hz.size(); ++k) {
        out << num(sp.frequency_hz[k]) << "," << num(sp.asd_v_per_sqrt_hz[k]) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

Spectrum read_spectrum(const std::string& path) {
    std::ifstream in = open_in(path);
    Spectrum sp;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped[0] == '#') {
            const auto pos = stripped.find("resolution_bandwidth_hz=");
            if (pos != std::string::npos) {
                sp.resolution_bandwidth_hz =
                    parse_cell(trim(stripped.substr(pos + 24)), path, lineno);
            }
            continue;
        }
        if (!have_header) {
            if (stripped != "freq_hz,asd_v_per_sqrt_hz") {
                throw SchemaError(path + ": expected header 'freq_hz,asd_v_per_sqrt_hz'");
            }
            have_header = true;
            continue;
        }
        const auto comma = stripped.find(',');
        if (comma == std::string::npos) {
            throw SchemaError(path + " line " + std::to_string(lineno) + ": expected two columns");
        }
        sp.frequency_hz.push_back(parse_cell(trim(stripped.substr(0, comma)), path, lineno));
        sp.asd_v_per_sqrt_hz.push_back(parse_cell(trim(stripped.substr(comma + 1)), path, lineno));
    }
    if (!have_header || sp.frequency_hz.empty()) {
        throw SchemaError(path + ": empty or headerless spectrum");
    }
    return sp;
}

std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path,
                                                                const std::string& x_name,
                                                                const std::string& y_name) {
    std::ifstream in = open_in(path);
    std::vector<double> x, y;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto comma = stripped.find(',');
        if (comma == std::string::npos) {
            throw SchemaError(path + " line " + std::to_string(lineno) + ": expected two columns");
        }
        const std::string first = trim(stripped.substr(0, comma));
        const std::string second = trim(stripped.substr(comma + 1));
        if (second.find(',') != std::string::npos) {
            throw SchemaError(path + " line " + std::to_string(lineno) + ": expected two columns");
        }
        if (!have_header) {
            if (first != x_name || second != y_name) {
                throw SchemaError(path + ": expected header '" + x_name + "," + y_name +
                                  "', found '" + stripped + "'");
            }
            have_header = true;
            continue;
        }
        x.push_back(parse_cell(first, path, lineno));
        y.push_back(parse_cell(second, path, lineno));
    }
    if (!have_header) throw SchemaError(path + ": missing header row");
    if (x.empty()) throw SchemaError(path + ": no data rows");
    return {std::move(x), std::move(y)};
}

void write_xy_csv(const std::string& path, const std::string& x_name, const std::string& y_name,
                  const std::vector<double>& x, const std::vector<double>& y,
                  const Provenance& prov) {
    if (x.size() != y.size()) throw std::invalid_argument("write_xy_csv: length mismatch");
    std::ofstream out = open_out(path);
    write_provenance(out, prov);
    out << x_name << "," << y_name << "\n";
    for (std::size_t k = 0; k < x.size(); ++k) {
        out << num(x[k]) << "," << num(y[k]) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_fit_result(const std::string& path, const FitResult& fit,
                      const std::string& input_path, const std::string& input_hash,
                      const std::string& init_description, const Provenance& prov,
                      const std::vector<std::pair<std::string, std::string>>& extras) {
    std::ofstream out = open_out(path);
    write_provenance(out, prov);
    out << "model = " << fit_model_name(fit.model) << "\n";
    out << "input_file = " << input_path << "\n";
    out << "input_hash = " << input_hash << "\n";
    out << "init = " << init_description << "\n";
    out << "converged = " << (fit.converged ? "true" : "false") << "\n";
    out << "iterations = " << fit.iterations << "\n";
    out << "residual_rms = " << num(fit.residual_rms) << "\n";
    if (!fit.message.empty()) out << "status = " << fit.message << "\n";
    const auto& names = fit_param_names(fit.model);
    for (std::size_t k = 0; k < names.size(); ++k) {
        out << "param_" << names[k] << " = " << num(fit.params[k]) << "\n";
        out << "stderr_" << names[k] << " = " << num(fit.std_errors[k]) << "\n";
    }
    for (const auto& [key, value] : extras) {
        out << key << " = " << value << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_design_scan(const std::string& path, const DesignScan& scan, const Provenance& prov) {
    std::ofstream out = open_out(path);
    write_provenance(out, prov);
    std::string var_column;
    switch (scan.variable) {
        case ScanVariable::eta: var_column = "eta_amg"; break;
        case ScanVariable::temperature: var_column = "temperature_k"; break;
        case ScanVariable::volume: var_column = "volume_m3"; break;
    }
    out << var_column;
    if (scan.variable == ScanVariable::volume) out << ",eta_opt_amg";
    out << ",gamma_wd_per_s,gamma_se_per_s,gamma_sd_per_s,gamma_bg_per_s,gamma_dk_per_s,"
           "r_op_per_s,gamma_total_per_s,delta_b_asn_t_per_sqrt_hz\n";
    for (std::size_t k = 0; k < scan.grid.size(); ++k) {
        const RateBudget& b = scan.budgets[k];
        out << num(scan.grid[k]);
        if (scan.variable == ScanVariable::volume) out << "," << num(scan.eta_opt_amg[k]);
        out << "," << num(b.wall.events_per_second())
            << "," << num(b.spin_exchange.events_per_second())
            << "," << num(b.spin_destruction.events_per_second())
            << "," << num(b.buffer_gas.events_per_second())
            << "," << num(b.dark.events_per_second())
            << "," << num(b.pumping.events_per_second())
            << "," << num(b.total.events_per_second())
            << "," << num(scan.sensitivity_t[k]) << "\n";
    }
    out << "# optimum " << var_column << " = " << num(scan.optimum_variable)
        << " objective = " << num(scan.optimum_value) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace zfropm
