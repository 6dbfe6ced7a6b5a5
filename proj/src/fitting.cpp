#include "zfropm/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zfropm/errors.hpp"
#include "zfropm/vapor.hpp"

namespace zfropm {

std::size_t fit_param_count(FitModel model) {
    switch (model) {
        case FitModel::zfr: return 4;
        case FitModel::dispersive: return 3;
        case FitModel::absorption: return 5;
    }
    throw std::logic_error("fit_param_count: unknown model");
}

const std::vector<std::string>& fit_param_names(FitModel model) {
    static const std::vector<std::string> zfr_names = {"a_v", "b_v", "b0_t", "delta_b_t"};
    static const std::vector<std::string> disp_names = {"u_v", "b0_t", "delta_b_t"};
    static const std::vector<std::string> abs_names = {"c0", "c1_per_hz", "nu0_hz", "fwhm_hz",
                                                       "depth"};
    switch (model) {
        case FitModel::zfr: return zfr_names;
        case FitModel::dispersive: return disp_names;
        case FitModel::absorption: return abs_names;
    }
    throw std::logic_error("fit_param_names: unknown model");
}

FitModel fit_model_from_name(const std::string& name) {
    if (name == "zfr") return FitModel::zfr;
    if (name == "dispersive") return FitModel::dispersive;
    if (name == "absorption") return FitModel::absorption;
    throw std::invalid_argument("unknown fit model: " + name);
}

std::string fit_model_name(FitModel model) {
    switch (model) {
        case FitModel::zfr: return "zfr";
        case FitModel::dispersive: return "dispersive";
        case FitModel::absorption: return "absorption";
    }
    throw std::logic_error("fit_model_name: unknown model");
}

namespace {

// Width parameter index per model; a trial step that drives it non-positive
// is rejected rather than evaluated.
int width_index(FitModel model) {
    switch (model) {
        case FitModel::zfr: return 3;
        case FitModel::dispersive: return 2;
        case FitModel::absorption: return 3;
    }
    return -1;
}

double value_zfr(const std::vector<double>& p, double x) {
    const double xr = x - p[2];
    const double q = p[3] * p[3] / 4.0;
    return p[0] + (p[1] - p[0]) * q / (xr * xr + q);
}

double value_dispersive(const std::vector<double>& p, double x) {
    const double xr = x - p[1];
    const double q = p[2] * p[2] / 4.0;
    return 0.5 * p[0] * xr * p[2] / (xr * xr + q);
}

double value_absorption(const std::vector<double>& p, double x) {
    const double xr = x - p[2];
    const double q = p[3] * p[3] / 4.0;
    return p[0] + p[1] * xr - p[4] * q / (xr * xr + q);
}

void jacobian_zfr(const std::vector<double>& p, double x, double* row) {
    const double xr = x - p[2];
    const double q = p[3] * p[3] / 4.0;
    const double den = xr * xr + q;
    const double h = q / den;
    row[0] = 1.0 - h;
    row[1] = h;
    row[2] = (p[1] - p[0]) * q * 2.0 * xr / (den * den);
    row[3] = (p[1] - p[0]) * xr * xr / (den * den) * (p[3] / 2.0);
}

void jacobian_dispersive(const std::vector<double>& p, double x, double* row) {
    const double xr = x - p[1];
    const double q = p[2] * p[2] / 4.0;
    const double den = xr * xr + q;
    row[0] = 0.5 * xr * p[2] / den;
    row[1] = -0.5 * p[0] * p[2] * (q - xr * xr) / (den * den);
    row[2] = 0.5 * p[0] * xr * (xr * xr - q) / (den * den);
}

void jacobian_absorption(const std::vector<double>& p, double x, double* row) {
    const double xr = x - p[2];
    const double q = p[3] * p[3] / 4.0;
    const double den = xr * xr + q;
    row[0] = 1.0;
    row[1] = xr;
    row[2] = -p[1] - 2.0 * p[4] * q * xr / (den * den);
    row[3] = -p[4] * xr * xr / (den * den) * (p[3] / 2.0);
    row[4] = -q / den;
}

double edge_median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    return v[mid];
}

// Median of y over the first and last tenths of the record: baseline level.
double wings_level(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t edge = std::max<std::size_t>(1, x.size() / 10);
    std::vector<double> v;
    v.insert(v.end(), y.begin(), y.begin() + edge);
    v.insert(v.end(), y.end() - edge, y.end());
    return edge_median(v);
}

// Span of x where y (relative to baseline) exceeds half its extreme value.
double half_span(const std::vector<double>& x, const std::vector<double>& y, double baseline,
                 double extreme, std::size_t extreme_idx) {
    const double half = baseline + 0.5 * (extreme - baseline);
    const bool peak = extreme > baseline;
    auto above = [&](std::size_t i) { return peak ? y[i] >= half : y[i] <= half; };
    std::size_t lo = extreme_idx, hi = extreme_idx;
    while (lo > 0 && above(lo - 1)) --lo;
    while (hi + 1 < y.size() && above(hi + 1)) ++hi;
    double span = std::abs(x[hi] - x[lo]);
    if (span <= 0.0) span = std::abs(x.back() - x.front()) / 4.0;
    return span;
}

std::vector<double> auto_init(FitModel model, const std::vector<double>& x,
                              const std::vector<double>& y) {
    const std::size_t imax = static_cast<std::size_t>(
        std::max_element(y.begin(), y.end()) - y.begin());
    const std::size_t imin = static_cast<std::size_t>(
        std::min_element(y.begin(), y.end()) - y.begin());

    switch (model) {
        case FitModel::zfr: {
            const double a = wings_level(x, y);
            const double b = y[imax];
            const double width = half_span(x, y, a, b, imax);
            return {a, b, x[imax], width};
        }
        case FitModel::dispersive: {
            // Extrema of the dispersive shape sit at b0 +/- dB/2; their
            // midpoint is the zero crossing of maximum slope.
            const double b0 = 0.5 * (x[imax] + x[imin]);
            double width = std::abs(x[imax] - x[imin]);
            if (width <= 0.0) width = std::abs(x.back() - x.front()) / 4.0;
            const double sign = (x[imax] >= x[imin]) ? 1.0 : -1.0;
            const double u = sign * (y[imax] - y[imin]);
            return {u, b0, width};
        }
        case FitModel::absorption: {
            const std::size_t edge = std::max<std::size_t>(1, x.size() / 10);
            const double yl = edge_median({y.begin(), y.begin() + edge});
            const double yr = edge_median({y.end() - edge, y.end()});
            const double xl = x[edge / 2];
            const double xr = x[x.size() - 1 - edge / 2];
            const double c1 = (xr != xl) ? (yr - yl) / (xr - xl) : 0.0;
            const double nu0 = x[imin];
            const double c0 = yl + c1 * (nu0 - xl);
            const double depth = std::max(c0 - y[imin], 0.0);
            const double width = half_span(x, y, c0, y[imin], imin);
            return {c0, c1, nu0, width, depth};
        }
    }
    throw std::logic_error("auto_init: unknown model");
}

// Solve (A + lambda diag(A)) step = g for a small symmetric system by
// Gaussian elimination with partial pivoting. Returns false when singular.
bool solve_damped(std::vector<double> a, std::vector<double> g, double lambda, std::size_t n,
                  std::vector<double>& step) {
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] *= (1.0 + lambda);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        }
        if (std::abs(a[pivot * n + col]) < 1e-300) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(g[col], g[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            g[r] -= f * g[col];
        }
    }
    step.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = g[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * step[c];
        step[i] = s / a[i * n + i];
    }
    return true;
}

struct CostEval {
    double cost = 0.0;
    std::vector<double> jtj;   // p x p
    std::vector<double> jtr;   // p
};

CostEval evaluate(FitModel model, const std::vector<double>& p, const std::vector<double>& x,
                  const std::vector<double>& y, bool with_jacobian) {
    const std::size_t np = p.size();
    CostEval e;
    if (with_jacobian) {
        e.jtj.assign(np * np, 0.0);
        e.jtr.assign(np, 0.0);
    }
    std::vector<double> row(np);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = fit_model_value(model, p, x[i]) - y[i];
        e.cost += r * r;
        if (!with_jacobian) continue;
        switch (model) {
            case FitModel::zfr: jacobian_zfr(p, x[i], row.data()); break;
            case FitModel::dispersive: jacobian_dispersive(p, x[i], row.data()); break;
            case FitModel::absorption: jacobian_absorption(p, x[i], row.data()); break;
        }
        for (std::size_t a = 0; a < np; ++a) {
            e.jtr[a] += row[a] * r;
            for (std::size_t b = a; b < np; ++b) e.jtj[a * np + b] += row[a] * row[b];
        }
    }
    if (with_jacobian) {
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = 0; b < a; ++b) e.jtj[a * np + b] = e.jtj[b * np + a];
        }
    }
    return e;
}

}  // namespace

double fit_model_value(FitModel model, const std::vector<double>& params, double x) {
    if (params.size() != fit_param_count(model)) {
        throw std::invalid_argument("fit_model_value: wrong parameter count");
    }
    switch (model) {
        case FitModel::zfr: return value_zfr(params, x);
        case FitModel::dispersive: return value_dispersive(params, x);
        case FitModel::absorption: return value_absorption(params, x);
    }
    throw std::logic_error("fit_model_value: unknown model");
}

std::vector<double> fit_model_jacobian(FitModel model, const std::vector<double>& params,
                                       double x) {
    if (params.size() != fit_param_count(model)) {
        throw std::invalid_argument("fit_model_jacobian: wrong parameter count");
    }
    std::vector<double> row(params.size(), 0.0);
    switch (model) {
        case FitModel::zfr: jacobian_zfr(params, x, row.data()); break;
        case FitModel::dispersive: jacobian_dispersive(params, x, row.data()); break;
        case FitModel::absorption: jacobian_absorption(params, x, row.data()); break;
    }
    return row;
}

FitResult fit_curve(FitModel model, const std::vector<double>& x, const std::vector<double>& y,
                    const std::optional<std::vector<double>>& init) {
    const std::size_t np = fit_param_count(model);
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_curve: x and y lengths differ");
    }
    if (x.size() < 2 * np) {
        throw std::invalid_argument("fit_curve: need at least 2x parameter count data points");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw std::invalid_argument("fit_curve: data must be finite");
        }
    }
    {
        std::vector<double> xs = x;
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
            throw std::invalid_argument("fit_curve: x values must be distinct");
        }
    }
    std::vector<double> p = init ? *init : auto_init(model, x, y);
    if (p.size() != np) {
        throw std::invalid_argument("fit_curve: init has wrong parameter count");
    }
    const int widx = width_index(model);
    if (widx >= 0 && p[widx] <= 0.0) {
        throw std::invalid_argument("fit_curve: initial width must be positive");
    }

    constexpr int max_iterations = 200;
    constexpr double cost_tol = 1e-12;
    constexpr double grad_tol = 1e-10;

    FitResult result;
    result.model = model;

    double lambda = 1e-3;
    CostEval cur = evaluate(model, p, x, y, true);
    bool converged = false;
    int iter = 0;
    std::string message;

    for (; iter < max_iterations && !converged; ++iter) {
        double grad_inf = 0.0;
        for (double g : cur.jtr) grad_inf = std::max(grad_inf, std::abs(g));
        if (grad_inf < grad_tol) {
            converged = true;
            message = "gradient below tolerance";
            break;
        }

        bool stepped = false;
        for (int tries = 0; tries < 60; ++tries) {
            std::vector<double> neg_g(np);
            for (std::size_t a = 0; a < np; ++a) neg_g[a] = -cur.jtr[a];
            std::vector<double> step;
            if (!solve_damped(cur.jtj, neg_g, lambda, np, step)) {
                lambda *= 10.0;
                continue;
            }
            std::vector<double> trial = p;
            for (std::size_t a = 0; a < np; ++a) trial[a] += step[a];
            if (widx >= 0 && trial[widx] <= 0.0) {
                lambda *= 10.0;
                continue;
            }
            CostEval next = evaluate(model, trial, x, y, true);
            if (next.cost <= cur.cost) {
                const double rel_drop =
                    (cur.cost - next.cost) / std::max(cur.cost, 1e-300);
                p = std::move(trial);
                cur = std::move(next);
                lambda = std::max(lambda / 10.0, 1e-14);
                stepped = true;
                if (rel_drop < cost_tol) {
                    converged = true;
                    message = "relative cost decrease below tolerance";
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped && !converged) {
            // No acceptable step even under heavy damping: stationary point.
            converged = true;
            message = "no descent step found";
        }
    }
    if (!converged) message = "maximum iterations reached";

    result.params = p;
    result.iterations = iter;
    result.converged = converged;
    result.residual_rms = std::sqrt(cur.cost / static_cast<double>(x.size()));

    // Standard errors from the residual-variance-scaled inverse normal matrix.
    result.std_errors.assign(np, 0.0);
    const double dof = static_cast<double>(x.size()) - static_cast<double>(np);
    if (dof > 0.0) {
        const double variance = cur.cost / dof;
        bool singular = false;
        for (std::size_t a = 0; a < np && !singular; ++a) {
            std::vector<double> unit(np, 0.0);
            unit[a] = 1.0;
            std::vector<double> col;
            if (!solve_damped(cur.jtj, unit, 0.0, np, col) || col[a] < 0.0) {
                singular = true;
            } else {
                result.std_errors[a] = std::sqrt(variance * col[a]);
            }
        }
        if (singular) {
            result.std_errors.assign(np, std::numeric_limits<double>::infinity());
            message = message.empty() ? "rank-deficient jacobian"
                                      : message + "; rank-deficient jacobian";
        }
    }
    result.message = message;
    return result;
}

double derive_pressure(const FitResult& fit, const BufferGas& gas) {
    if (fit.model != FitModel::absorption) {
        throw std::invalid_argument("derive_pressure: fit is not an absorption fit");
    }
    if (!fit.converged) {
        throw NonConvergenceError("derive_pressure: fit did not converge");
    }
    return density_from_fwhm(gas, fit.params[3]);
}

}  // namespace zfropm
