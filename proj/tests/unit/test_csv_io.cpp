#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "zfropm/csv_io.hpp"
#include "zfropm/errors.hpp"

using namespace zfropm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "zfropm_csv_test";
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const Provenance prov{"0.1.0", "0123456789abcdef", 42};

}  // namespace

TEST_CASE("fnv1a reference vectors") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("time series round trip") {
    TempDir tmp;
    TimeSeries ts;
    ts.sample_rate_hz = 50000.0;
    ts.samples = {0.1, -2.25e-7, 9.299999999999999, 1.0 / 3.0};
    const std::string path = tmp.file("series.csv");
    write_time_series(path, ts, prov);

    std::uint64_t seed = 0;
    const TimeSeries back = read_time_series(path, &seed);
    CHECK(back.sample_rate_hz == ts.sample_rate_hz);
    CHECK(back.samples == ts.samples);
    CHECK(seed == 42);

    const std::string text = slurp(path);
    CHECK(text.find("# zfropm_version=0.1.0") != std::string::npos);
    CHECK(text.find("# config_hash=0123456789abcdef") != std::string::npos);
    CHECK(text.find("# sample_rate_hz=50000 seed=42") != std::string::npos);
}

TEST_CASE("time series schema violations") {
    TempDir tmp;
    const std::string path = tmp.file("bad.csv");
    spit(path, "0.1\n0.2\n0.3\n");
    CHECK_THROWS_AS((void)read_time_series(path), SchemaError);
    spit(path, "# sample_rate_hz=1000 seed=1\n0.5\n");
    CHECK_THROWS_AS((void)read_time_series(path), SchemaError);
    spit(path, "# sample_rate_hz=1000 seed=1\n0.5\nnot_a_number\n");
    CHECK_THROWS_AS((void)read_time_series(path), SchemaError);
    CHECK_THROWS_AS((void)read_time_series(tmp.file("absent.csv")), IoError);
}

TEST_CASE("spectrum round trip") {
    TempDir tmp;
    Spectrum sp;
    sp.resolution_bandwidth_hz = 2.0;
    sp.frequency_hz = {0.0, 2.0, 4.0};
    sp.asd_v_per_sqrt_hz = {1e-5, 7.03e-5, 6.9e-5};
    const std::string path = tmp.file("spec.csv");
    write_spectrum(path, sp, prov);
    const Spectrum back = read_spectrum(path);
    CHECK(back.frequency_hz == sp.frequency_hz);
    CHECK(back.asd_v_per_sqrt_hz == sp.asd_v_per_sqrt_hz);
    CHECK(back.resolution_bandwidth_hz == 2.0);
    CHECK(slurp(path).find("freq_hz,asd_v_per_sqrt_hz") != std::string::npos);
}

TEST_CASE("xy csv round trip and schema checks") {
    TempDir tmp;
    const std::string path = tmp.file("sweep.csv");
    write_xy_csv(path, "field_t", "voltage_v", {-1e-7, 0.0, 1e-7}, {-3.1, 0.0, 3.1}, prov);
    const auto [x, y] = read_xy_csv(path, "field_t", "voltage_v");
    CHECK(x == std::vector<double>{-1e-7, 0.0, 1e-7});
    CHECK(y == std::vector<double>{-3.1, 0.0, 3.1});

    // Wrong header name.
    CHECK_THROWS_AS((void)read_xy_csv(path, "freq_hz", "transmission"), SchemaError);

    // Missing column on a data row.
    spit(path, "field_t,voltage_v\n1e-9,0.5\n2e-9\n");
    try {
        (void)read_xy_csv(path, "field_t", "voltage_v");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    // Non numeric cell.
    spit(path, "field_t,voltage_v\n1e-9,high\n");
    CHECK_THROWS_AS((void)read_xy_csv(path, "field_t", "voltage_v"), SchemaError);

    // No data rows.
    spit(path, "field_t,voltage_v\n");
    CHECK_THROWS_AS((void)read_xy_csv(path, "field_t", "voltage_v"), SchemaError);

    CHECK_THROWS_AS((void)read_xy_csv(tmp.file("absent.csv"), "a", "b"), IoError);
}

TEST_CASE("fit result files carry the full report") {
    TempDir tmp;
    FitResult fit;
    fit.model = FitModel::dispersive;
    fit.params = {6.4, 0.0, 182e-9};
    fit.std_errors = {0.01, 1e-10, 2e-10};
    fit.residual_rms = 0.003;
    fit.iterations = 9;
    fit.converged = true;
    fit.message = "relative cost decrease below tolerance";
    const std::string path = tmp.file("fit.txt");
    write_fit_result(path, fit, "in.csv", "deadbeefdeadbeef", "auto", prov,
                     {{"slope_v_per_t", "7.03e7"}});
    const std::string text = slurp(path);
    for (const char* needle :
         {"model = dispersive", "input_file = in.csv", "input_hash = deadbeefdeadbeef",
          "init = auto", "converged = true", "iterations = 9", "param_u_v = ",
          "stderr_u_v = ", "param_delta_b_t = ", "slope_v_per_t = 7.03e7",
          "# zfropm_version=0.1.0"}) {
        INFO(needle);
        CHECK(text.find(needle) != std::string::npos);
    }
}

TEST_CASE("design scan files have one row per grid point") {
    TempDir tmp;
    const CellGeometry geom = CellGeometry::reference_channel();
    OperatingPoint op;
    const DesignScan scan = rate_scan(geom, AlkaliSpecies::rb85(), BufferGas::nitrogen(), op,
                                      {0.5, 0.75, 1.0, 2.0});
    const std::string path = tmp.file("scan.csv");
    write_design_scan(path, scan, prov);
    const std::string text = slurp(path);
    CHECK(text.find("eta_amg,") != std::string::npos);
    CHECK(text.find("delta_b_asn_t_per_sqrt_hz") != std::string::npos);
    int rows = 0;
    for (char ch : text) {
        if (ch == '\n') ++rows;
    }
    // provenance (3) + header + 4 points + optimum comment.
    CHECK(rows == 9);
}
