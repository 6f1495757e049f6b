// run_config.hpp — Run configuration for the command-line front end

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opendicke/criticality.hpp"

namespace opendicke::cli {

enum class Command { fig2, fig3, fig4, sweep, spectrum, oracle };
enum class Format { csv, json };

struct GridSpec {
    double min{0.0};
    double max{1.0};
    double step{0.01};

    std::vector<double> values() const;
    bool operator==(const GridSpec&) const = default;
};

// "min:max:step"
GridSpec parse_grid(const std::string& text, const std::string& key);
std::vector<int> parse_int_list(const std::string& text, const std::string& key);

struct RunConfig {
    Command command{Command::sweep};
    open::SystemSpec spec;
    std::vector<int> Ns;
    bool include_infinite{false};
    criticality::Parameter parameter{criticality::Parameter::lambda};
    GridSpec grid;
    std::optional<int> n_max; // fixed cutoff; auto cutoff when empty
    criticality::SweepMode mode{criticality::SweepMode::ground_state};
    Format format{Format::csv};
    std::string output_dir{"."};
    int bins{50};
    double fano_gamma{0.01};

    // Throws ConfigError naming the offending key.
    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

std::string to_string(Command command);
Command parse_command(const std::string& text);
std::string mode_name(criticality::SweepMode mode);
criticality::SweepMode parse_mode(const std::string& text);

RunConfig defaults(Command command);

nlohmann::json to_json(const RunConfig& config);
// Overlays the keys of `j` on `base`; unknown keys are rejected.
RunConfig apply_json(RunConfig base, const nlohmann::json& j);
RunConfig from_json(const nlohmann::json& j);

RunConfig load_config_file(Command command, const std::string& path);

} // namespace opendicke::cli
