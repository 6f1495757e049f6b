// commands.cpp — Figure, sweep, spectrum and oracle commands

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "opendicke/chaos.hpp"
#include "opendicke/oracles/counting.hpp"

namespace opendicke::cli {

using nlohmann::json;
using criticality::Observable;
using criticality::Parameter;
using criticality::SweepMode;

namespace {

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string parameter_column(Parameter p) { return criticality::to_string(p); }

open::SystemSpec spec_for(const RunConfig& config, int N, int n_max)
{
    open::SystemSpec s = config.spec;
    s.dicke.N = N;
    s.dicke.n_max = n_max;
    return s;
}

int cutoff_for(const RunConfig& config, int N, const std::vector<double>& grid)
{
    if (config.n_max) return *config.n_max;
    open::SystemSpec s = spec_for(config, N, 1);
    return criticality::auto_cutoff(s, config.parameter, grid, config.spec.tolerances.cutoff_rel_tol);
}

Table curve_table(const std::string& name, json meta, const criticality::SweepTable& t)
{
    Table table{name, std::move(meta), {parameter_column(t.parameter), "occupation", "current", "fano"}, {}};
    for (std::size_t k = 0; k < t.grid.size(); ++k) {
        table.rows.push_back({t.grid[k], t.occupation[k], t.current[k], t.fano[k]});
    }
    return table;
}

Table derivative_table(const std::string& name, json meta, const criticality::SweepResult& d,
                       const std::string& column)
{
    Table table{name, std::move(meta), {parameter_column(d.parameter), column}, {}};
    for (std::size_t k = 0; k < d.grid.size(); ++k) table.rows.push_back({d.grid[k], d.values[k]});
    return table;
}

// Infinite-N curve on the grid points of the normal phase.
criticality::SweepTable infinite_table(const RunConfig& config, const std::vector<double>& grid,
                                       const criticality::SweepOptions& options)
{
    std::vector<double> normal;
    for (double v : grid) {
        const double lambda = config.parameter == Parameter::lambda ? v : config.spec.dicke.lambda;
        const double omega0 = config.parameter == Parameter::omega0 ? v : config.spec.dicke.omega0;
        if (lambda < dicke::critical_coupling(config.spec.dicke.omega, omega0)) normal.push_back(v);
    }
    if (normal.size() < 3) throw std::domain_error("inf: fewer than 3 grid points lie in the normal phase");
    open::SystemSpec s = config.spec;
    s.include_tq = false;
    return criticality::sweep_table(s, config.parameter, normal, SweepMode::normal_phase, options);
}

std::vector<Table> compute_fig2(const RunConfig& config)
{
    const std::vector<double> grid = config.grid.values();
    std::vector<Table> tables;
    for (int N : config.Ns) {
        const int n_max = cutoff_for(config, N, grid);
        const auto t = criticality::sweep_table(spec_for(config, N, n_max), config.parameter, grid, config.mode);
        const json meta = {{"N", N}, {"n_max", n_max}, {"mode", mode_name(config.mode)}};
        const std::string tag = "N" + std::to_string(N);
        tables.push_back(curve_table("fig2_current_" + tag, meta, t));
        tables.push_back(derivative_table("fig2_derivative_" + tag, meta, t.curve(Observable::derivative),
                                          "dcurrent"));
    }
    if (config.include_infinite) {
        const auto t = infinite_table(config, grid, {});
        const json meta = {{"N", "inf"}, {"mode", "normal"}};
        tables.push_back(curve_table("fig2_current_Ninf", meta, t));
        tables.push_back(derivative_table("fig2_derivative_Ninf", meta, t.curve(Observable::derivative), "dcurrent"));
    }
    return tables;
}

std::vector<Table> compute_fig3(const RunConfig& config)
{
    const std::vector<double> grid = config.grid.values();
    const double lambda_c = dicke::critical_coupling(config.spec.dicke.omega, config.spec.dicke.omega0);
    transport::TransportQubit noise_tq = transport::TransportQubit::from(config.spec);
    noise_tq.gamma_L = config.fano_gamma;
    noise_tq.gamma_R = config.fano_gamma;

    Table scaling{"fig3_scaling", json::object(),
                  {"N", "n_max", "lambda_m", "lambda_m_minus_lambda_c", "dcurrent_min", "fano_peak", "dfano_max"},
                  {}};
    std::vector<Table> tables;
    std::vector<std::pair<double, double>> shift, depth, fano_shift;
    for (int N : config.Ns) {
        const int n_max = cutoff_for(config, N, grid);
        criticality::SweepOptions options;
        options.with_fano = false;
        const auto t = criticality::sweep_table(spec_for(config, N, n_max), Parameter::lambda, grid,
                                                SweepMode::ground_state, options);
        const auto slope = t.curve(Observable::derivative);
        const auto minimum = criticality::find_minimum(slope);

        criticality::SweepResult fano = t.curve(Observable::occupation);
        fano.observable = Observable::fano;
        for (double& v : fano.values) v = transport::passive_noise(noise_tq, v).fano;
        const auto dfano = criticality::derivative(fano);
        const auto peak = criticality::find_maximum(dfano);

        const json meta = {{"N", N}, {"n_max", n_max}, {"fano_gamma", config.fano_gamma}};
        const std::string tag = "N" + std::to_string(N);
        tables.push_back(derivative_table("fig3_fano_" + tag, meta, fano, "fano"));
        tables.push_back(derivative_table("fig3_fano_derivative_" + tag, meta, dfano, "dfano"));
        scaling.rows.push_back({static_cast<double>(N), static_cast<double>(n_max), minimum.location,
                                minimum.location - lambda_c, minimum.value, peak.location, peak.value});
        shift.emplace_back(N, minimum.location - lambda_c);
        depth.emplace_back(N, minimum.value);
        fano_shift.emplace_back(N, peak.location - lambda_c);
    }
    if (config.include_infinite) {
        open::SystemSpec s = config.spec;
        s.gamma_L = s.gamma_R = config.fano_gamma;
        RunConfig c = config;
        c.spec = s;
        const auto t = infinite_table(c, grid, {});
        const json meta = {{"N", "inf"}, {"fano_gamma", config.fano_gamma}};
        const auto fano = t.curve(Observable::fano);
        tables.push_back(derivative_table("fig3_fano_Ninf", meta, fano, "fano"));
        tables.push_back(derivative_table("fig3_fano_derivative_Ninf", meta, criticality::derivative(fano), "dfano"));
    }

    Table fits{"fig3_fits", json::object(), {"fit", "exponent", "exponent_err", "prefactor"}, {}};
    const auto f_shift = criticality::fit_power_law(shift);
    const auto f_depth = criticality::fit_log_scaling(depth);
    fits.rows.push_back({0, f_shift.exponent, f_shift.exponent_err, f_shift.prefactor});
    fits.rows.push_back({1, f_depth.exponent, f_depth.exponent_err, f_depth.prefactor});
    bool fano_fit = std::all_of(fano_shift.begin(), fano_shift.end(), [](const auto& p) { return p.second > 0.0; });
    if (fano_fit) {
        const auto f_fano = criticality::fit_power_law(fano_shift);
        fits.rows.push_back({2, f_fano.exponent, f_fano.exponent_err, f_fano.prefactor});
    }
    fits.curve = {{"fit_codes", {{"0", "lambda_m - lambda_c ~ N^exponent"},
                                 {"1", "dcurrent_min ~ exponent * log2 N + prefactor"},
                                 {"2", "fano_peak - lambda_c ~ N^exponent"}}}};
    tables.push_back(std::move(scaling));
    tables.push_back(std::move(fits));
    return tables;
}

std::vector<Table> compute_spectrum(const RunConfig& config, const std::string& prefix)
{
    dicke::DickeParams p = config.spec.dicke;
    p.N = config.Ns.front();
    p.n_max = *config.n_max;
    const auto r = chaos::damped_spectrum(p, config.spec.gamma_b, config.bins);
    const json meta = {{"N", p.N},
                       {"n_max", p.n_max},
                       {"zero_tol", r.zero_tol},
                       {"removed_zero_count", r.removed_zero_count},
                       {"s_max", r.s_max},
                       {"max_real_part", open::max_real_part(r.eigenvalues)}};
    Table spectrum{prefix + "_spectrum", meta, {"re", "im"}, {}};
    std::vector<Complex> sorted = r.eigenvalues;
    std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    for (const Complex& z : sorted) spectrum.rows.push_back({z.real(), z.imag()});
    Table histogram{prefix + "_histogram", meta, {"bin_center", "probability"}, {}};
    for (std::size_t k = 0; k < r.histogram.centers.size(); ++k) {
        histogram.rows.push_back({r.histogram.centers[k], r.histogram.probabilities[k]});
    }
    return {spectrum, histogram};
}

std::vector<Table> compute_sweep(const RunConfig& config)
{
    const std::vector<double> grid = config.grid.values();
    const int N = config.Ns.front();
    if (config.mode == SweepMode::normal_phase) {
        const auto t = infinite_table(config, grid, {});
        return {curve_table("sweep", {{"N", "inf"}, {"mode", "normal"}}, t)};
    }
    const int n_max = cutoff_for(config, N, grid);
    const auto t = criticality::sweep_table(spec_for(config, N, n_max), config.parameter, grid, config.mode);
    return {curve_table("sweep", {{"N", N}, {"n_max", n_max}, {"mode", mode_name(config.mode)}}, t)};
}

} // namespace

std::vector<Table> compute(const RunConfig& config)
{
    config.validate();
    switch (config.command) {
    case Command::fig2: return compute_fig2(config);
    case Command::fig3: return compute_fig3(config);
    case Command::fig4: return compute_spectrum(config, "fig4");
    case Command::spectrum: return compute_spectrum(config, "spectrum");
    case Command::sweep: return compute_sweep(config);
    case Command::oracle: return {};
    }
    return {};
}

std::string render(const RunConfig& config, const Table& table)
{
    std::ostringstream out;
    if (config.format == Format::json) {
        json rows = json::array();
        for (const auto& row : table.rows) rows.push_back(row);
        const json doc = {{"version", OPENDICKE_VERSION},
                          {"config", to_json(config)},
                          {"curve", table.curve},
                          {"columns", table.columns},
                          {"rows", rows}};
        out << doc.dump(1) << '\n';
        return out.str();
    }
    out << "# opendicke " << OPENDICKE_VERSION << '\n';
    out << "# config: " << to_json(config).dump() << '\n';
    out << "# curve: " << table.curve.dump() << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_real(row[c]);
        out << '\n';
    }
    return out.str();
}

std::vector<std::string> write_tables(const RunConfig& config, const std::vector<Table>& tables)
{
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    auto cleanup = [&] {
        std::error_code ec;
        for (const auto& path : written) fs::remove(path, ec);
    };
    try {
        fs::create_directories(config.output_dir);
        const std::string ext = config.format == Format::csv ? ".csv" : ".json";
        for (const Table& t : tables) {
            const std::string path = (fs::path(config.output_dir) / (t.name + ext)).string();
            written.push_back(path);
            std::ofstream f(path, std::ios::binary);
            if (!f) throw std::runtime_error("out: cannot write '" + path + "'");
            f << render(config, t);
            if (!f.flush()) throw std::runtime_error("out: write failed for '" + path + "'");
        }
    } catch (...) {
        cleanup();
        throw;
    }
    return written;
}

RunConfig read_header(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    const std::string key = "# config: ";
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key, 0) == 0) return from_json(json::parse(line.substr(key.size())));
        if (line.empty() || line[0] != '#') break;
    }
    in.clear();
    in.seekg(0);
    try {
        const json doc = json::parse(in);
        return from_json(doc.at("config"));
    } catch (const json::exception&) {
        throw std::runtime_error("'" + path + "' has no configuration header");
    }
}

bool run_oracles(std::ostream& out)
{
    bool ok = true;
    auto report = [&](bool pass, const std::string& what) {
        out << (pass ? "PASS " : "FAIL ") << what << '\n';
        ok = ok && pass;
    };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

    for (double eps : {0.0, 0.1}) {
        for (double gl : {0.01, 1.0}) {
            for (double gr : {0.1, 1.0}) {
                open::SystemSpec s;
                s.dicke = {1.0, 1.0, 0.3, 1, 3};
                s.gamma_b = 0.5;
                s.g = 0.0;
                s.epsilon = eps;
                s.delta = 0.1;
                s.gamma_L = gl;
                s.gamma_R = gr;
                const auto me = transport::me_transport(s);
                const auto o = oracles::three_state_cumulants(eps, 0.1, gl, gr);
                const auto closed = transport::passive_transport(transport::TransportQubit::from(s), 0.0,
                                                                 transport::Convention::reconciled);
                std::ostringstream tag;
                tag << "eps=" << eps << " GL=" << gl << " GR=" << gr;
                const double e_me = std::max(rel(me.transport.current, o.current),
                                             rel(me.transport.noise_zero_freq, 2 * o.variance));
                const double e_cf = std::max(rel(closed.current, o.current),
                                             rel(closed.noise_zero_freq, 2 * o.variance));
                report(e_me < 1e-8, "tq master equation vs counting statistics " + tag.str() +
                                        " rel=" + format_real(e_me));
                report(e_cf < 1e-8, "tq reconciled closed form vs counting statistics " + tag.str() +
                                        " rel=" + format_real(e_cf));
            }
        }
    }

    for (double lambda : {0.2, 0.5}) {
        dicke::DickeParams p{1.0, 1.0, lambda, 2, 4};
        const auto r = chaos::damped_spectrum(p, 0.0);
        const auto gaps = chaos::closed_gaps_oracle(dicke::dicke_hamiltonian(p), r.zero_tol);
        double err = gaps.size() == r.positive_imag.size() ? 0.0 : INFINITY;
        for (std::size_t k = 0; k < gaps.size() && std::isfinite(err); ++k) {
            err = std::max(err, std::abs(gaps[k] - r.positive_imag[k]));
        }
        report(err < 1e-8, "undamped spectrum vs pairwise energy gaps lambda=" + format_real(lambda) +
                               " max_dev=" + format_real(err));
    }
    return ok;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        if (config.command == Command::oracle) return run_oracles(out) ? 0 : 1;
        const auto tables = compute(config);
        for (const auto& path : write_tables(config, tables)) out << path << '\n';
        return 0;
    } catch (const ConfigError& e) {
        err << "opendicke: invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "opendicke: " << e.what() << '\n';
        return 1;
    }
}

} // namespace opendicke::cli
