#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zfropm/fitting.hpp"
#include "zfropm/optimizer.hpp"
#include "zfropm/signal_chain.hpp"

namespace zfropm {

/// Header stamped on every output file.
struct Provenance {
    std::string version;
    std::string config_hash;
    std::uint64_t seed = 0;
};

/// FNV-1a 64-bit hash as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Same, over a file's bytes (IoError when unreadable).
std::string fnv1a_hex_of_file(const std::string& path);

/// Provenance lines, the `# sample_rate_hz=<v> seed=<v>` header, then one
/// voltage per line.
void write_time_series(const std::string& path, const TimeSeries& ts, const Provenance& prov);

/// Reads the format written above. The series seed is returned through
/// seed_out when the header carries one.
TimeSeries read_time_series(const std::string& path, std::uint64_t* seed_out = nullptr);

/// Provenance lines, then `freq_hz,asd_v_per_sqrt_hz` rows.
void write_spectrum(const std::string& path, const Spectrum& sp, const Provenance& prov);

Spectrum read_spectrum(const std::string& path);

/// Two-column CSV with an exact `<x_name>,<y_name>` header; SchemaError on
/// any mismatch, short row, or non-numeric cell.
std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path,
                                                                const std::string& x_name,
                                                                const std::string& y_name);

void write_xy_csv(const std::string& path, const std::string& x_name, const std::string& y_name,
                  const std::vector<double>& x, const std::vector<double>& y,
                  const Provenance& prov);

/// Structured-text fit report: key = value lines, one param_*/stderr_* pair
/// per parameter, plus input provenance and any extra lines supplied.
void write_fit_result(const std::string& path, const FitResult& fit,
                      const std::string& input_path, const std::string& input_hash,
                      const std::string& init_description, const Provenance& prov,
                      const std::vector<std::pair<std::string, std::string>>& extras = {});

/// One row per grid point: scanned variable, rate components in events per
/// second, and the per-point sensitivity.
void write_design_scan(const std::string& path, const DesignScan& scan, const Provenance& prov);

}  // namespace zfropm
