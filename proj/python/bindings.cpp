#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zfropm/config.hpp"
#include "zfropm/constants.hpp"
#include "zfropm/errors.hpp"
#include "zfropm/fitting.hpp"
#include "zfropm/geometry.hpp"
#include "zfropm/optical.hpp"
#include "zfropm/optimizer.hpp"
#include "zfropm/relaxation.hpp"
#include "zfropm/signal_chain.hpp"
#include "zfropm/species.hpp"
#include "zfropm/vapor.hpp"
#include "zfropm/version.hpp"
#include "zfropm/zfr.hpp"

namespace py = pybind11;
using namespace zfropm;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Zero-field-resonance OPM model core";
    m.attr("__version__") = version_string;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);

    py::class_<RateValue>(m, "RateValue")
        .def_static("events", &RateValue::events, py::arg("value"))
        .def_static("cyclic", &RateValue::cyclic, py::arg("value"))
        .def("events_per_second", &RateValue::events_per_second)
        .def("cyclic_value", &RateValue::cyclic_value)
        .def("__repr__", [](const RateValue& r) {
            return "RateValue(" + std::to_string(r.events_per_second()) + " /s)";
        });

    py::class_<AlkaliSpecies>(m, "AlkaliSpecies")
        .def_static("rb85", &AlkaliSpecies::rb85)
        .def_static("rb87", &AlkaliSpecies::rb87)
        .def_readwrite("name", &AlkaliSpecies::name)
        .def_readwrite("mass_kg", &AlkaliSpecies::mass_kg)
        .def_readwrite("f_osc_d1", &AlkaliSpecies::f_osc_d1)
        .def_readwrite("gamma_rad_per_s_per_t", &AlkaliSpecies::gamma_rad_per_s_per_t)
        .def_readwrite("sigma_se_m2", &AlkaliSpecies::sigma_se_m2)
        .def_readwrite("sigma_sd_m2", &AlkaliSpecies::sigma_sd_m2)
        .def_readwrite("q_se", &AlkaliSpecies::q_se);

    py::class_<BufferGas>(m, "BufferGas")
        .def_static("nitrogen", &BufferGas::nitrogen)
        .def_readwrite("name", &BufferGas::name)
        .def_readwrite("mass_kg", &BufferGas::mass_kg)
        .def_readwrite("sigma_alkali_m2", &BufferGas::sigma_alkali_m2)
        .def_readwrite("broadening_hz_per_amg", &BufferGas::broadening_hz_per_amg)
        .def_readwrite("diffusion_d0_m2_per_s", &BufferGas::diffusion_d0_m2_per_s);

    py::class_<CellGeometry>(m, "CellGeometry")
        .def(py::init<>())
        .def_static("reference_channel", &CellGeometry::reference_channel)
        .def_readwrite("lx_m", &CellGeometry::lx_m)
        .def_readwrite("ly_m", &CellGeometry::ly_m)
        .def_readwrite("lz_m", &CellGeometry::lz_m)
        .def_readwrite("standoff_m", &CellGeometry::standoff_m)
        .def("volume_m3", &CellGeometry::volume_m3);

    py::class_<OperatingPoint>(m, "OperatingPoint")
        .def(py::init<>())
        .def_readwrite("temperature_k", &OperatingPoint::temperature_k)
        .def_readwrite("eta_amg", &OperatingPoint::eta_amg)
        .def_readwrite("pump_power_w", &OperatingPoint::pump_power_w)
        .def_readwrite("beam_waist_m", &OperatingPoint::beam_waist_m)
        .def_readwrite("transmission", &OperatingPoint::transmission)
        .def_readwrite("pump_frequency_hz", &OperatingPoint::pump_frequency_hz)
        .def_readwrite("measurement_time_s", &OperatingPoint::measurement_time_s)
        .def_readwrite("line_fwhm_rad_per_s", &OperatingPoint::line_fwhm_rad_per_s);

    py::class_<RateBudget>(m, "RateBudget")
        .def_readonly("wall", &RateBudget::wall)
        .def_readonly("spin_exchange", &RateBudget::spin_exchange)
        .def_readonly("spin_destruction", &RateBudget::spin_destruction)
        .def_readonly("buffer_gas", &RateBudget::buffer_gas)
        .def_readonly("pumping", &RateBudget::pumping)
        .def_readonly("dark", &RateBudget::dark)
        .def_readonly("total", &RateBudget::total);

    m.def("vapor_density", &vapor_density, py::arg("species"), py::arg("temperature_k"));
    m.def("mean_relative_speed", &mean_relative_speed, py::arg("mass1_kg"),
          py::arg("mass2_kg"), py::arg("temperature_k"));
    m.def("fwhm_from_density", &fwhm_from_density, py::arg("gas"), py::arg("eta_amg"));
    m.def("diffusion_coefficient", &diffusion_coefficient, py::arg("gas"), py::arg("eta_amg"),
          py::arg("temperature_k"));

    m.def("wall_rate", &wall_rate);
    m.def("spin_exchange_rate", &spin_exchange_rate);
    m.def("spin_destruction_rate", &spin_destruction_rate);
    m.def("buffer_gas_rate", &buffer_gas_rate);
    m.def("pumping_rate", &pumping_rate);
    m.def("make_rate_budget", &make_rate_budget, py::arg("geometry"), py::arg("species"),
          py::arg("gas"), py::arg("operating_point"));
    m.def("linewidth_from_rates", &linewidth_from_rates);

    py::class_<OpticalDepthResult>(m, "OpticalDepthResult")
        .def_readonly("d0", &OpticalDepthResult::d0)
        .def_readonly("density_per_m3", &OpticalDepthResult::density_per_m3)
        .def_readonly("length_m", &OpticalDepthResult::length_m)
        .def_readonly("line_fwhm_rad_per_s", &OpticalDepthResult::line_fwhm_rad_per_s);
    m.def("optical_depth", &optical_depth, py::arg("species"), py::arg("density_per_m3"),
          py::arg("length_m"), py::arg("line_fwhm_rad_per_s"));
    m.def("transmitted_intensity", &transmitted_intensity);

    py::class_<ZfrParams>(m, "ZfrParams")
        .def(py::init<>())
        .def_readwrite("a_v", &ZfrParams::a_v)
        .def_readwrite("b_v", &ZfrParams::b_v)
        .def_readwrite("b0_t", &ZfrParams::b0_t)
        .def_readwrite("delta_b_t", &ZfrParams::delta_b_t);
    py::class_<DispersiveParams>(m, "DispersiveParams")
        .def(py::init<>())
        .def_readwrite("u_v", &DispersiveParams::u_v)
        .def_readwrite("b0_t", &DispersiveParams::b0_t)
        .def_readwrite("delta_b_t", &DispersiveParams::delta_b_t);
    m.def("zfr_voltage", &zfr_voltage, py::arg("params"), py::arg("field_t"));
    m.def("dispersive_voltage", &dispersive_voltage, py::arg("params"), py::arg("field_t"));
    m.def("sharpness", &sharpness);
    m.def("slope_at_center", &slope_at_center);

    py::class_<DarkRateCoefficients>(m, "DarkRateCoefficients")
        .def_readwrite("wall_amg", &DarkRateCoefficients::wall_amg)
        .def_readwrite("bg_per_amg", &DarkRateCoefficients::bg_per_amg)
        .def_readwrite("constant", &DarkRateCoefficients::constant)
        .def("rate_at", &DarkRateCoefficients::rate_at, py::arg("eta_amg"));
    py::class_<DensityOptimum>(m, "DensityOptimum")
        .def_readonly("eta_opt_amg", &DensityOptimum::eta_opt_amg)
        .def_readonly("dark_min", &DensityOptimum::dark_min)
        .def_readonly("degenerate", &DensityOptimum::degenerate);
    m.def("reported_coefficients", &reported_coefficients);
    m.def("physical_coefficients", &physical_coefficients);
    m.def("closed_form_optimum", &closed_form_optimum);
    m.def("minimize_dark_rate", &minimize_dark_rate);
    py::class_<BufferOptimumResult>(m, "BufferOptimumResult")
        .def_readonly("eta_opt_amg", &BufferOptimumResult::eta_opt_amg)
        .def_readonly("dark_min", &BufferOptimumResult::dark_min)
        .def_readonly("budget_at_optimum", &BufferOptimumResult::budget_at_optimum);
    m.def("optimal_buffer_density", &optimal_buffer_density);
    m.def("asn_sensitivity", &asn_sensitivity, py::arg("dark_rate"), py::arg("density_per_m3"),
          py::arg("volume_m3"), py::arg("time_s"), py::arg("gamma_rad_per_s_per_t"));

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init<>())
        .def_readwrite("sample_rate_hz", &TimeSeries::sample_rate_hz)
        .def_readwrite("start_time_s", &TimeSeries::start_time_s)
        .def_readwrite("samples", &TimeSeries::samples);
    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("frequency_hz", &Spectrum::frequency_hz)
        .def_readonly("asd_v_per_sqrt_hz", &Spectrum::asd_v_per_sqrt_hz)
        .def_readonly("resolution_bandwidth_hz", &Spectrum::resolution_bandwidth_hz);
    py::class_<ModulationSpec>(m, "ModulationSpec")
        .def(py::init<>())
        .def_readwrite("frequency_hz", &ModulationSpec::frequency_hz)
        .def_readwrite("amplitude_t", &ModulationSpec::amplitude_t)
        .def_readwrite("phase_rad", &ModulationSpec::phase_rad)
        .def_readwrite("dc_offset_t", &ModulationSpec::dc_offset_t);
    py::class_<LowPassSpec>(m, "LowPassSpec")
        .def(py::init<>())
        .def_readwrite("time_constant_s", &LowPassSpec::time_constant_s)
        .def_readwrite("stages", &LowPassSpec::stages);
    py::class_<ToneSpec>(m, "ToneSpec")
        .def(py::init<>())
        .def_readwrite("frequency_hz", &ToneSpec::frequency_hz)
        .def_readwrite("rms_t", &ToneSpec::rms_t);
    py::class_<DemodOutput>(m, "DemodOutput")
        .def_readonly("in_phase", &DemodOutput::in_phase)
        .def_readonly("quadrature", &DemodOutput::quadrature);

    m.def("synthesize_pd_signal", &synthesize_pd_signal, py::arg("zfr"), py::arg("mod"),
          py::arg("sample_rate_hz"), py::arg("duration_s"), py::arg("noise_asd_v") = 0.0,
          py::arg("tones") = std::vector<ToneSpec>{}, py::arg("seed") = 0);
    m.def("synthesize_lia_output", &synthesize_lia_output, py::arg("disp"), py::arg("b_dc_t"),
          py::arg("tones"), py::arg("noise_asd_v"), py::arg("sample_rate_hz"),
          py::arg("duration_s"), py::arg("seed") = 0);
    m.def("lowpass_filter", &lowpass_filter);
    m.def("lowpass_gain", &lowpass_gain);
    m.def("lockin_demodulate", &lockin_demodulate, py::arg("series"), py::arg("ref_frequency_hz"),
          py::arg("ref_phase_rad"), py::arg("lowpass"));
    m.def("quasi_static_response", &quasi_static_response);
    m.def("asd_estimate", &asd_estimate, py::arg("series"), py::arg("segment_length"),
          py::arg("overlap_fraction") = 0.5);
    m.def("spectrum_value_at", &spectrum_value_at);
    m.def("band_median", &band_median);
    m.def("integrated_rms", &integrated_rms);
    m.def("equivalent_magnetic_noise", &equivalent_magnetic_noise);

    py::enum_<FitModel>(m, "FitModel")
        .value("zfr", FitModel::zfr)
        .value("dispersive", FitModel::dispersive)
        .value("absorption", FitModel::absorption);
    py::class_<FitResult>(m, "FitResult")
        .def_readonly("model", &FitResult::model)
        .def_readonly("params", &FitResult::params)
        .def_readonly("std_errors", &FitResult::std_errors)
        .def_readonly("residual_rms", &FitResult::residual_rms)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("message", &FitResult::message);
    m.def("fit_curve", &fit_curve, py::arg("model"), py::arg("x"), py::arg("y"),
          py::arg("initial") = std::nullopt);
    m.def("fit_param_names", &fit_param_names);
    m.def("derive_pressure", &derive_pressure);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def("serialize", &RunConfig::serialize)
        .def("hash", &RunConfig::hash)
        .def("validate", &RunConfig::validate);
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));
}
