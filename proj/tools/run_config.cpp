// run_config.cpp — Run configuration parsing, defaults and JSON round trip

#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace opendicke::cli {

using nlohmann::json;

std::vector<double> GridSpec::values() const
{
    return criticality::uniform_grid(min, max, step);
}

namespace {

void sync_spec(RunConfig& c)
{
    const bool spectral = c.command == Command::fig4 || c.command == Command::spectrum;
    c.spec.include_tq = !spectral && c.mode == criticality::SweepMode::me_full;
    c.spec.dicke.N = c.Ns.empty() ? 1 : c.Ns.front();
    c.spec.dicke.n_max = c.n_max.value_or(1);
}

double parse_double(const std::string& text, const std::string& key)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(key, "'" + text + "' is not a number");
    }
    if (used != text.size()) throw ConfigError(key, "'" + text + "' is not a number");
    return value;
}

} // namespace

GridSpec parse_grid(const std::string& text, const std::string& key)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw ConfigError(key, "expected min:max:step, got '" + text + "'");
    return {parse_double(parts[0], key), parse_double(parts[1], key), parse_double(parts[2], key)};
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key)
{
    std::vector<int> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw ConfigError(key, "'" + part + "' is not an integer");
        }
        if (used != part.size()) throw ConfigError(key, "'" + part + "' is not an integer");
        out.push_back(value);
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

std::string to_string(Command command)
{
    switch (command) {
    case Command::fig2: return "fig2";
    case Command::fig3: return "fig3";
    case Command::fig4: return "fig4";
    case Command::sweep: return "sweep";
    case Command::spectrum: return "spectrum";
    case Command::oracle: return "oracle";
    }
    return "unknown";
}

Command parse_command(const std::string& text)
{
    for (Command c : {Command::fig2, Command::fig3, Command::fig4, Command::sweep, Command::spectrum,
                      Command::oracle}) {
        if (to_string(c) == text) return c;
    }
    throw ConfigError("command", "unknown command '" + text + "'");
}

std::string mode_name(criticality::SweepMode mode)
{
    switch (mode) {
    case criticality::SweepMode::ground_state: return "ground";
    case criticality::SweepMode::normal_phase: return "normal";
    case criticality::SweepMode::me_no_backaction: return "me";
    case criticality::SweepMode::me_full: return "me-tq";
    }
    return "unknown";
}

criticality::SweepMode parse_mode(const std::string& text)
{
    using criticality::SweepMode;
    for (SweepMode m : {SweepMode::ground_state, SweepMode::normal_phase, SweepMode::me_no_backaction,
                        SweepMode::me_full}) {
        if (mode_name(m) == text) return m;
    }
    throw ConfigError("mode", "expected ground|normal|me|me-tq, got '" + text + "'");
}

RunConfig defaults(Command command)
{
    RunConfig c;
    c.command = command;
    c.spec.dicke.omega = 1.0;
    c.spec.dicke.omega0 = 1.0;
    c.spec.delta = 0.1;
    c.spec.gamma_L = 0.1;
    c.spec.gamma_R = 0.1;
    c.spec.epsilon = 0.0;
    c.spec.g = 0.1;
    c.spec.gamma_b = 0.0;
    c.spec.tolerances.cutoff_rel_tol = 1e-6;
    switch (command) {
    case Command::fig2:
        c.Ns = {4, 8, 16, 20, 24};
        c.grid = {0.0, 1.0, 0.005};
        break;
    case Command::fig3:
        c.Ns = {4, 8, 16, 20, 24, 40, 60};
        c.grid = {0.30, 0.90, 0.0025};
        break;
    case Command::fig4:
    case Command::spectrum:
        c.Ns = {6};
        c.spec.gamma_b = 0.1;
        c.spec.dicke.lambda = 0.5;
        c.n_max = 13;
        break;
    case Command::sweep:
        c.Ns = {4};
        c.grid = {0.0, 1.0, 0.01};
        break;
    case Command::oracle:
        c.Ns = {};
        break;
    }
    sync_spec(c);
    return c;
}

void RunConfig::validate() const
{
    const bool spectral = command == Command::fig4 || command == Command::spectrum;
    if (command != Command::oracle && Ns.empty()) throw ConfigError("N", "at least one value required");
    for (int N : Ns) {
        if (N < 1) throw ConfigError("N", "must be >= 1");
    }
    if (!(spec.dicke.omega > 0.0)) throw ConfigError("omega", "must be > 0");
    if (!(spec.dicke.omega0 > 0.0)) throw ConfigError("omega0", "must be > 0");
    if (!(spec.dicke.lambda >= 0.0)) throw ConfigError("lambda", "must be >= 0");
    if (!(spec.gamma_b >= 0.0)) throw ConfigError("gamma_b", "must be >= 0");
    if (!(spec.gamma_L > 0.0)) throw ConfigError("gamma_l", "must be > 0");
    if (!(spec.gamma_R > 0.0)) throw ConfigError("gamma_r", "must be > 0");
    if (!(spec.delta >= 0.0)) throw ConfigError("tc", "must be >= 0");
    if (!std::isfinite(spec.epsilon)) throw ConfigError("epsilon", "must be finite");
    if (!std::isfinite(spec.g)) throw ConfigError("g", "must be finite");
    if (!(fano_gamma > 0.0)) throw ConfigError("fano_gamma", "must be > 0");
    if (n_max && *n_max < 1) throw ConfigError("n_max", "must be >= 1");
    if (!(spec.tolerances.cutoff_rel_tol > 0.0)) throw ConfigError("auto_cutoff", "must be > 0");
    if (bins < 10) throw ConfigError("bins", "must be >= 10");
    if (output_dir.empty()) throw ConfigError("out", "must not be empty");

    if (command == Command::fig2 || command == Command::fig3 || command == Command::sweep) {
        const std::string key = parameter == criticality::Parameter::lambda ? "lambda_grid" : "omega0_grid";
        if (!(grid.min < grid.max)) throw ConfigError(key, "min must be < max");
        if (!(grid.step > 0.0)) throw ConfigError(key, "step must be > 0");
        if (grid.min < 0.0) throw ConfigError(key, "values must be >= 0");
        if (parameter == criticality::Parameter::omega0 && !(grid.min > 0.0)) {
            throw ConfigError(key, "omega0 values must be > 0");
        }
        if ((grid.max - grid.min) / grid.step > 1e6) throw ConfigError(key, "more than 1e6 points");
        if (grid.values().size() < 3) throw ConfigError(key, "at least 3 points required");
        if ((mode == criticality::SweepMode::me_no_backaction || mode == criticality::SweepMode::me_full) &&
            !(spec.gamma_b > 0.0)) {
            throw ConfigError("gamma_b", "ME modes need gamma_b > 0 for a unique steady state");
        }
        if (mode == criticality::SweepMode::normal_phase) {
            for (double v : grid.values()) {
                const double lambda = parameter == criticality::Parameter::lambda ? v : spec.dicke.lambda;
                const double omega0 = parameter == criticality::Parameter::omega0 ? v : spec.dicke.omega0;
                if (lambda >= dicke::critical_coupling(spec.dicke.omega, omega0)) {
                    throw ConfigError(key, "normal mode requires lambda < lambda_c at every grid point");
                }
            }
        }
    }
    if (command == Command::fig3 && Ns.size() < 3) throw ConfigError("N", "scaling fits need >= 3 values");
    if (spectral && !n_max) throw ConfigError("n_max", "spectra need a fixed cutoff");
}

json to_json(const RunConfig& c)
{
    json j;
    j["command"] = to_string(c.command);
    j["N"] = c.Ns;
    j["inf"] = c.include_infinite;
    j["parameter"] = criticality::to_string(c.parameter);
    j["grid"] = {{"min", c.grid.min}, {"max", c.grid.max}, {"step", c.grid.step}};
    j["omega"] = c.spec.dicke.omega;
    j["omega0"] = c.spec.dicke.omega0;
    j["lambda"] = c.spec.dicke.lambda;
    j["epsilon"] = c.spec.epsilon;
    j["tc"] = c.spec.delta;
    j["g"] = c.spec.g;
    j["gamma_l"] = c.spec.gamma_L;
    j["gamma_r"] = c.spec.gamma_R;
    j["gamma_b"] = c.spec.gamma_b;
    j["n_max"] = c.n_max ? json(*c.n_max) : json(nullptr);
    j["mode"] = mode_name(c.mode);
    j["format"] = c.format == Format::csv ? "csv" : "json";
    j["out"] = c.output_dir;
    j["bins"] = c.bins;
    j["fano_gamma"] = c.fano_gamma;
    const auto& t = c.spec.tolerances;
    j["tolerances"] = {{"eigen_residual", t.eigen_residual},
                       {"cutoff_rel_tol", t.cutoff_rel_tol},
                       {"steady_residual", t.steady_residual},
                       {"degeneracy", t.degeneracy}};
    return j;
}

namespace {

template <typename T>
T get(const json& j, const std::string& key)
{
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key, "wrong type");
    }
}

} // namespace

RunConfig apply_json(RunConfig c, const json& j)
{
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    static const std::set<std::string> known = {
        "command", "N", "inf", "parameter", "grid", "omega", "omega0", "lambda", "epsilon", "tc", "g",
        "gamma_l", "gamma_r", "gamma_b", "n_max", "mode", "format", "out", "bins", "fano_gamma", "tolerances"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw ConfigError(key, "unknown key");
    }
    if (j.contains("command") && parse_command(get<std::string>(j["command"], "command")) != c.command) {
        throw ConfigError("command", "does not match the requested command");
    }
    if (j.contains("N")) c.Ns = get<std::vector<int>>(j["N"], "N");
    if (j.contains("inf")) c.include_infinite = get<bool>(j["inf"], "inf");
    if (j.contains("parameter")) {
        const auto p = get<std::string>(j["parameter"], "parameter");
        if (p == "lambda") {
            c.parameter = criticality::Parameter::lambda;
        } else if (p == "omega0") {
            c.parameter = criticality::Parameter::omega0;
        } else {
            throw ConfigError("parameter", "expected lambda|omega0");
        }
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object()) throw ConfigError("grid", "expected {min, max, step}");
        for (const auto& [key, value] : g.items()) {
            if (key != "min" && key != "max" && key != "step") throw ConfigError("grid." + key, "unknown key");
        }
        if (g.contains("min")) c.grid.min = get<double>(g["min"], "grid.min");
        if (g.contains("max")) c.grid.max = get<double>(g["max"], "grid.max");
        if (g.contains("step")) c.grid.step = get<double>(g["step"], "grid.step");
    }
    if (j.contains("omega")) c.spec.dicke.omega = get<double>(j["omega"], "omega");
    if (j.contains("omega0")) c.spec.dicke.omega0 = get<double>(j["omega0"], "omega0");
    if (j.contains("lambda")) c.spec.dicke.lambda = get<double>(j["lambda"], "lambda");
    if (j.contains("epsilon")) c.spec.epsilon = get<double>(j["epsilon"], "epsilon");
    if (j.contains("tc")) c.spec.delta = get<double>(j["tc"], "tc");
    if (j.contains("g")) c.spec.g = get<double>(j["g"], "g");
    if (j.contains("gamma_l")) c.spec.gamma_L = get<double>(j["gamma_l"], "gamma_l");
    if (j.contains("gamma_r")) c.spec.gamma_R = get<double>(j["gamma_r"], "gamma_r");
    if (j.contains("gamma_b")) c.spec.gamma_b = get<double>(j["gamma_b"], "gamma_b");
    if (j.contains("n_max")) {
        c.n_max = j["n_max"].is_null() ? std::nullopt : std::optional<int>(get<int>(j["n_max"], "n_max"));
    }
    if (j.contains("mode")) c.mode = parse_mode(get<std::string>(j["mode"], "mode"));
    if (j.contains("format")) {
        const auto f = get<std::string>(j["format"], "format");
        if (f == "csv") {
            c.format = Format::csv;
        } else if (f == "json") {
            c.format = Format::json;
        } else {
            throw ConfigError("format", "expected csv|json");
        }
    }
    if (j.contains("out")) c.output_dir = get<std::string>(j["out"], "out");
    if (j.contains("bins")) c.bins = get<int>(j["bins"], "bins");
    if (j.contains("fano_gamma")) c.fano_gamma = get<double>(j["fano_gamma"], "fano_gamma");
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
        auto& tol = c.spec.tolerances;
        for (const auto& [key, value] : t.items()) {
            const std::string full = "tolerances." + key;
            if (key == "eigen_residual") {
                tol.eigen_residual = get<double>(value, full);
            } else if (key == "cutoff_rel_tol") {
                tol.cutoff_rel_tol = get<double>(value, full);
            } else if (key == "steady_residual") {
                tol.steady_residual = get<double>(value, full);
            } else if (key == "degeneracy") {
                tol.degeneracy = get<double>(value, full);
            } else {
                throw ConfigError(full, "unknown key");
            }
            if (!(get<double>(value, full) > 0.0)) throw ConfigError(full, "must be > 0");
        }
    }
    sync_spec(c);
    return c;
}

RunConfig from_json(const json& j)
{
    if (!j.is_object() || !j.contains("command")) throw ConfigError("command", "missing");
    RunConfig c = apply_json(defaults(parse_command(get<std::string>(j["command"], "command"))), j);
    c.validate();
    return c;
}

RunConfig load_config_file(Command command, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return apply_json(defaults(command), j);
}

} // namespace opendicke::cli
