// criticality.cpp — Coupling sweeps, derivative curves and finite-size scaling fits

#include "opendicke/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace opendicke::criticality {

std::string to_string(SweepMode mode)
{
    switch (mode) {
    case SweepMode::ground_state: return "ground_state";
    case SweepMode::normal_phase: return "normal_phase";
    case SweepMode::me_no_backaction: return "me_no_backaction";
    case SweepMode::me_full: return "me_full";
    }
    return "unknown";
}

std::string to_string(Parameter parameter)
{
    return parameter == Parameter::lambda ? "lambda" : "omega0";
}

std::string to_string(Observable observable)
{
    switch (observable) {
    case Observable::occupation: return "occupation";
    case Observable::current: return "current";
    case Observable::fano: return "fano";
    case Observable::derivative: return "derivative";
    }
    return "unknown";
}

namespace {

void require_increasing(const std::vector<double>& grid)
{
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("sweep: grid must be strictly increasing");
    }
}

open::SystemSpec at(const open::SystemSpec& spec, Parameter parameter, double value)
{
    open::SystemSpec s = spec;
    if (parameter == Parameter::lambda) {
        s.dicke.lambda = value;
    } else {
        s.dicke.omega0 = value;
    }
    return s;
}

} // namespace

SweepResult SweepTable::curve(Observable observable) const
{
    SweepResult r{grid, {}, observable, mode, parameter, spec};
    switch (observable) {
    case Observable::occupation: r.values = occupation; break;
    case Observable::current: r.values = current; break;
    case Observable::fano: r.values = fano; break;
    case Observable::derivative: {
        SweepResult c = r;
        c.observable = Observable::current;
        c.values = current;
        return derivative(c);
    }
    }
    if (r.values.size() != grid.size()) throw std::logic_error("sweep: observable was not computed");
    return r;
}

SweepTable sweep_table(const open::SystemSpec& spec, Parameter parameter, const std::vector<double>& grid,
                       SweepMode mode, const SweepOptions& options)
{
    require_increasing(grid);
    spec.validate();
    if (mode == SweepMode::me_full && !spec.include_tq) {
        throw std::invalid_argument("sweep: me_full mode requires the transport qubit");
    }
    if (mode == SweepMode::me_no_backaction && !(spec.gamma_b > 0.0)) {
        throw std::invalid_argument("sweep: me_no_backaction mode requires gamma_b > 0");
    }
    if (mode == SweepMode::normal_phase) {
        for (double v : grid) {
            const open::SystemSpec s = at(spec, parameter, v);
            if (!(s.dicke.omega0 > 0.0) ||
                s.dicke.lambda >= dicke::critical_coupling(s.dicke.omega, s.dicke.omega0)) {
                throw std::domain_error("sweep: normal_phase mode requires lambda < lambda_c at every grid point");
            }
        }
    }

    SweepTable t;
    t.grid = grid;
    t.mode = mode;
    t.parameter = parameter;
    t.spec = spec;
    const auto tq = transport::TransportQubit::from(spec);
    std::optional<Vector> previous;

    for (double v : grid) {
        const open::SystemSpec s = at(spec, parameter, v);
        if (mode == SweepMode::me_full) {
            const auto point = transport::me_transport(s, options.with_fano);
            t.occupation.push_back(point.occupation);
            t.current.push_back(point.transport.current);
            if (options.with_fano) t.fano.push_back(point.transport.fano);
            continue;
        }
        double occupation = 0.0;
        switch (mode) {
        case SweepMode::ground_state: {
            const auto gs = dicke::even_ground_state(s.dicke, s.tolerances.eigen_residual, previous);
            previous = gs.state;
            occupation = dicke::boson_occupation(gs.state, s.dicke.basis());
            break;
        }
        case SweepMode::normal_phase:
            occupation = dicke::normal_phase_occupation(s.dicke.omega, s.dicke.omega0, s.dicke.lambda).occupation;
            break;
        case SweepMode::me_no_backaction:
            occupation = transport::me_cavity_occupation(s).occupation;
            break;
        case SweepMode::me_full: break;
        }
        t.occupation.push_back(occupation);
        t.current.push_back(transport::passive_current(tq, occupation, options.convention));
        if (options.with_fano) t.fano.push_back(transport::passive_noise(tq, occupation, options.convention).fano);
    }
    return t;
}

SweepResult sweep(const open::SystemSpec& spec, Parameter parameter, const std::vector<double>& grid,
                  SweepMode mode, Observable observable, const SweepOptions& options)
{
    SweepOptions opts = options;
    opts.with_fano = observable == Observable::fano;
    return sweep_table(spec, parameter, grid, mode, opts).curve(observable);
}

SweepResult derivative(const SweepResult& curve)
{
    const auto& x = curve.grid;
    const auto& y = curve.values;
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("derivative: at least 3 grid points required");
    if (y.size() != n) throw std::invalid_argument("derivative: grid and values differ in length");

    // Derivative at x[at] of the parabola through points i, j, k.
    auto three_point = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t at) {
        const double xa = x[at];
        const double li = ((xa - x[j]) + (xa - x[k])) / ((x[i] - x[j]) * (x[i] - x[k]));
        const double lj = ((xa - x[i]) + (xa - x[k])) / ((x[j] - x[i]) * (x[j] - x[k]));
        const double lk = ((xa - x[i]) + (xa - x[j])) / ((x[k] - x[i]) * (x[k] - x[j]));
        return li * y[i] + lj * y[j] + lk * y[k];
    };

    SweepResult d = curve;
    d.observable = Observable::derivative;
    d.values.assign(n, 0.0);
    d.values[0] = three_point(0, 1, 2, 0);
    for (std::size_t k = 1; k + 1 < n; ++k) d.values[k] = three_point(k - 1, k, k + 1, k);
    d.values[n - 1] = three_point(n - 3, n - 2, n - 1, n - 1);
    return d;
}

namespace {

Extremum refine(const SweepResult& curve, bool minimum)
{
    const auto& x = curve.grid;
    const auto& y = curve.values;
    if (x.size() < 3 || y.size() != x.size()) throw std::invalid_argument("find_extremum: need >= 3 points");
    const auto it = minimum ? std::min_element(y.begin(), y.end()) : std::max_element(y.begin(), y.end());
    const std::size_t k = static_cast<std::size_t>(it - y.begin());
    if (k == 0 || k + 1 == y.size()) throw std::domain_error("extremum not bracketed");

    const double x0 = x[k - 1], x1 = x[k], x2 = x[k + 1];
    const double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1];
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (a == 0.0) return {x1, y1};
    const double b = d01 - a * (x0 + x1);
    const double vertex = -b / (2.0 * a);
    const double value = y1 + (vertex - x1) * (d01 + a * (vertex - x0));
    return {vertex, value};
}

struct Regression {
    double slope, slope_err, intercept;
};

Regression least_squares(const std::vector<double>& u, const std::vector<double>& v)
{
    const double n = static_cast<double>(u.size());
    double mu = 0.0, mv = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        mu += u[k];
        mv += v[k];
    }
    mu /= n;
    mv /= n;
    double suu = 0.0, suv = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        suu += (u[k] - mu) * (u[k] - mu);
        suv += (u[k] - mu) * (v[k] - mv);
    }
    if (!(suu > 1e-300)) throw std::invalid_argument("fit: degenerate abscissas");
    const double slope = suv / suu;
    const double intercept = mv - slope * mu;
    double ssr = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double r = v[k] - intercept - slope * u[k];
        ssr += r * r;
    }
    const double err = std::sqrt(ssr / (n - 2.0) / suu);
    return {slope, err, intercept};
}

void require_points(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 3) throw std::invalid_argument("fit: at least 3 points required");
    for (const auto& [N, y] : points) {
        if (!(N > 0.0)) throw std::invalid_argument("fit: abscissas must be > 0");
        if (!std::isfinite(y)) throw std::invalid_argument("fit: non-finite ordinate");
    }
}

} // namespace

Extremum find_minimum(const SweepResult& curve) { return refine(curve, true); }
Extremum find_maximum(const SweepResult& curve) { return refine(curve, false); }

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points)
{
    require_points(points);
    std::vector<double> u, v;
    for (const auto& [N, y] : points) {
        if (!(y > 0.0)) throw std::invalid_argument("fit_power_law: nonpositive ordinate");
        u.push_back(std::log(N));
        v.push_back(std::log(y));
    }
    const Regression r = least_squares(u, v);
    return {r.slope, r.slope_err, std::exp(r.intercept), points, FitKind::power_law};
}

ScalingFit fit_log_scaling(const std::vector<std::pair<double, double>>& points)
{
    require_points(points);
    std::vector<double> u, v;
    for (const auto& [N, y] : points) {
        u.push_back(std::log2(N));
        v.push_back(y);
    }
    const Regression r = least_squares(u, v);
    return {r.slope, r.slope_err, r.intercept, points, FitKind::log2_linear};
}

std::vector<double> uniform_grid(double min, double max, double step)
{
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be > 0");
    if (!(min < max)) throw std::invalid_argument("grid: min must be < max");
    const auto count = static_cast<long>(std::floor((max - min) / step + 1e-9));
    std::vector<double> grid;
    for (long k = 0; k <= count; ++k) grid.push_back(min + static_cast<double>(k) * step);
    return grid;
}

int auto_cutoff(const open::SystemSpec& spec, Parameter parameter, const std::vector<double>& grid,
                double rel_tol)
{
    require_increasing(grid);
    open::SystemSpec s = at(spec, parameter, parameter == Parameter::lambda ? grid.back() : grid.front());
    dicke::CutoffOptions options;
    options.tol = s.tolerances.eigen_residual;
    return dicke::cutoff_convergence(s.dicke, rel_tol, options);
}

ScalingAnalysis scaling_analysis(const open::SystemSpec& spec, const std::vector<int>& Ns,
                                 const std::vector<double>& grid, double cutoff_rel_tol,
                                 const SweepOptions& options)
{
    ScalingAnalysis analysis;
    const double lambda_c = dicke::critical_coupling(spec.dicke.omega, spec.dicke.omega0);
    std::vector<std::pair<double, double>> shift, depth, depth_abs;
    SweepOptions opts = options;
    opts.with_fano = false;
    for (int N : Ns) {
        open::SystemSpec s = spec;
        s.dicke.N = N;
        s.dicke.n_max = auto_cutoff(s, Parameter::lambda, grid, cutoff_rel_tol);
        ScalingPoint p;
        p.N = N;
        p.n_max = s.dicke.n_max;
        p.current = sweep_table(s, Parameter::lambda, grid, SweepMode::ground_state, opts).curve(Observable::current);
        p.slope = derivative(p.current);
        p.minimum = find_minimum(p.slope);
        shift.emplace_back(N, p.minimum.location - lambda_c);
        depth.emplace_back(N, p.minimum.value);
        depth_abs.emplace_back(N, std::abs(p.minimum.value));
        analysis.points.push_back(std::move(p));
    }
    analysis.shift = fit_power_law(shift);
    analysis.depth = fit_log_scaling(depth);
    analysis.depth_loglog = fit_power_law(depth_abs);
    return analysis;
}

} // namespace opendicke::criticality
