#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zfropm/species.hpp"

namespace zfropm {

enum class FitModel { zfr, dispersive, absorption };

/// Parameter layout per model:
///   zfr:        {a_v, b_v, b0_t, delta_b_t}
///   dispersive: {u_v, b0_t, delta_b_t}
///   absorption: {c0, c1_per_hz, nu0_hz, fwhm_hz, depth}
struct FitResult {
    FitModel model = FitModel::zfr;
    std::vector<double> params;
    std::vector<double> std_errors;
    double residual_rms = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string message;
};

std::size_t fit_param_count(FitModel model);
const std::vector<std::string>& fit_param_names(FitModel model);
FitModel fit_model_from_name(const std::string& name);
std::string fit_model_name(FitModel model);

/// Model value at x for a packed parameter vector.
double fit_model_value(FitModel model, const std::vector<double>& params, double x);

/// Analytic partial derivatives of the model value with respect to each
/// parameter, evaluated at x.
std::vector<double> fit_model_jacobian(FitModel model, const std::vector<double>& params,
                                       double x);

/// Damped least squares (Levenberg-Marquardt) with analytic Jacobians.
/// Auto-initialization from the data when init is absent. Returns
/// best-so-far with converged=false after 200 iterations.
FitResult fit_curve(FitModel model, const std::vector<double>& x, const std::vector<double>& y,
                    const std::optional<std::vector<double>>& init = std::nullopt);

/// Buffer-gas density implied by a converged absorption fit's FWHM.
double derive_pressure(const FitResult& fit, const BufferGas& gas);

}  // namespace zfropm
