// commands.hpp — Figure, sweep, spectrum and oracle commands

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace opendicke::cli {

struct Table {
    std::string name;                 // file stem
    nlohmann::json curve;             // per-curve metadata (N, n_max, ...)
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Data tables for a validated configuration. Pure computation, no I/O.
std::vector<Table> compute(const RunConfig& config);

// Writes every table into config.output_dir and returns the paths. Files
// already written are removed if a later write fails.
std::vector<std::string> write_tables(const RunConfig& config, const std::vector<Table>& tables);

std::string render(const RunConfig& config, const Table& table);

// Reads the configuration back from a file written by write_tables.
RunConfig read_header(const std::string& path);

// Runs the built-in oracle checks, one PASS/FAIL line each. Returns true when
// every check passes.
bool run_oracles(std::ostream& out);

// Full run: compute, write, report. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace opendicke::cli
