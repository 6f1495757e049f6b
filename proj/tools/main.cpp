// main.cpp — opendicke command-line entry point

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace opendicke::cli;

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> N;
    bool inf{false};
    std::optional<std::string> lambda_grid;
    std::optional<std::string> omega0_grid;
    std::optional<double> omega, omega0, lambda, epsilon, tc, g, gamma_l, gamma_r, gamma_b, fano_gamma;
    std::optional<int> n_max, bins;
    std::optional<double> auto_cutoff;
    std::optional<std::string> mode, format, out;
};

void add_flags(CLI::App* app, Flags& f)
{
    app->add_option("--config", f.config, "JSON configuration file; flags override its keys");
    app->add_option("--N", f.N, "Comma-separated qubit numbers");
    app->add_flag("--inf", f.inf, "Also emit the infinite-N normal-phase curve");
    app->add_option("--lambda-grid", f.lambda_grid, "Coupling grid min:max:step");
    app->add_option("--omega0-grid", f.omega0_grid, "Qubit splitting grid min:max:step (lambda fixed)");
    app->add_option("--omega", f.omega, "Boson frequency");
    app->add_option("--omega0", f.omega0, "Qubit splitting");
    app->add_option("--lambda", f.lambda, "Coupling for spectra and omega0 sweeps");
    app->add_option("--epsilon", f.epsilon, "Transport qubit detuning");
    app->add_option("--tc", f.tc, "Transport qubit tunneling T_c");
    app->add_option("--g", f.g, "Dispersive coupling");
    app->add_option("--gamma-l", f.gamma_l, "Left lead rate");
    app->add_option("--gamma-r", f.gamma_r, "Right lead rate");
    app->add_option("--gamma-b", f.gamma_b, "Cavity decay rate");
    app->add_option("--fano-gamma", f.fano_gamma, "Lead rates for the fig3 noise curves");
    app->add_option("--bins", f.bins, "Histogram bins");
    auto* n_max = app->add_option("--n-max", f.n_max, "Fixed Fock cutoff");
    auto* cutoff = app->add_option("--auto-cutoff", f.auto_cutoff, "Choose the cutoff by convergence to this tolerance");
    n_max->excludes(cutoff);
    app->add_option("--mode", f.mode, "ground|normal|me|me-tq");
    app->add_option("--format", f.format, "csv|json");
    app->add_option("--out", f.out, "Output directory");
}

RunConfig build(Command command, const Flags& f)
{
    RunConfig c = f.config ? load_config_file(command, *f.config) : defaults(command);
    nlohmann::json j = nlohmann::json::object();
    if (f.N) j["N"] = parse_int_list(*f.N, "N");
    if (f.inf) j["inf"] = true;
    if (f.lambda_grid && f.omega0_grid) throw ConfigError("lambda_grid", "conflicts with omega0_grid");
    auto grid_json = [](const GridSpec& g) { return nlohmann::json{{"min", g.min}, {"max", g.max}, {"step", g.step}}; };
    if (f.lambda_grid) {
        j["parameter"] = "lambda";
        j["grid"] = grid_json(parse_grid(*f.lambda_grid, "lambda_grid"));
    }
    if (f.omega0_grid) {
        j["parameter"] = "omega0";
        j["grid"] = grid_json(parse_grid(*f.omega0_grid, "omega0_grid"));
    }
    if (f.omega) j["omega"] = *f.omega;
    if (f.omega0) j["omega0"] = *f.omega0;
    if (f.lambda) j["lambda"] = *f.lambda;
    if (f.epsilon) j["epsilon"] = *f.epsilon;
    if (f.tc) j["tc"] = *f.tc;
    if (f.g) j["g"] = *f.g;
    if (f.gamma_l) j["gamma_l"] = *f.gamma_l;
    if (f.gamma_r) j["gamma_r"] = *f.gamma_r;
    if (f.gamma_b) j["gamma_b"] = *f.gamma_b;
    if (f.fano_gamma) j["fano_gamma"] = *f.fano_gamma;
    if (f.bins) j["bins"] = *f.bins;
    if (f.n_max) j["n_max"] = *f.n_max;
    if (f.auto_cutoff) {
        j["n_max"] = nullptr;
        j["tolerances"] = {{"cutoff_rel_tol", *f.auto_cutoff}};
    }
    if (f.mode) j["mode"] = *f.mode;
    if (f.format) j["format"] = *f.format;
    if (f.out) j["out"] = *f.out;
    c = apply_json(c, j);
    c.validate();
    return c;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Open Dicke model with a dispersively coupled transport qubit"};
    app.set_version_flag("--version", std::string("opendicke ") + OPENDICKE_VERSION);
    app.require_subcommand(1);

    Flags flags;
    const std::pair<Command, const char*> commands[] = {
        {Command::fig2, "Current and derivative curves against lambda"},
        {Command::fig3, "Finite-size scaling of the current-derivative minimum and noise curves"},
        {Command::fig4, "Damped Liouvillian spectrum and gap histogram"},
        {Command::sweep, "Single occupation/current/Fano sweep"},
        {Command::spectrum, "Liouvillian spectrum at one parameter point"},
        {Command::oracle, "Built-in oracle checks"}};
    std::vector<std::pair<Command, CLI::App*>> subs;
    for (const auto& [command, help] : commands) {
        CLI::App* sub = app.add_subcommand(to_string(command), help);
        add_flags(sub, flags);
        subs.emplace_back(command, sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [command, sub] : subs) {
        if (!sub->parsed()) continue;
        RunConfig config;
        try {
            config = build(command, flags);
        } catch (const ConfigError& e) {
            std::cerr << "opendicke: invalid configuration: " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "opendicke: " << e.what() << '\n';
            return 2;
        }
        return run(config, std::cout, std::cerr);
    }
    return 2;
}
