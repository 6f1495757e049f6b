// criticality.hpp — Coupling sweeps, derivative curves and finite-size scaling fits

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opendicke/open_system.hpp"
#include "opendicke/transport.hpp"

namespace opendicke::criticality {

enum class SweepMode { ground_state, normal_phase, me_no_backaction, me_full };
enum class Parameter { lambda, omega0 };
enum class Observable { occupation, current, fano, derivative };

std::string to_string(SweepMode mode);
std::string to_string(Parameter parameter);
std::string to_string(Observable observable);

struct SweepResult {
    std::vector<double> grid;
    std::vector<double> values;
    Observable observable{Observable::current};
    SweepMode mode{SweepMode::ground_state};
    Parameter parameter{Parameter::lambda};
    open::SystemSpec spec;
};

// Occupation, current and Fano factor on one grid. For every mode except
// me_full the current and Fano factor come from the passive formulas
// evaluated at the occupation.
struct SweepTable {
    std::vector<double> grid;
    std::vector<double> occupation;
    std::vector<double> current;
    std::vector<double> fano;
    SweepMode mode{SweepMode::ground_state};
    Parameter parameter{Parameter::lambda};
    open::SystemSpec spec;

    SweepResult curve(Observable observable) const;
};

struct SweepOptions {
    transport::Convention convention{transport::Convention::literal};
    bool with_fano{true};
};

// Grid must be strictly increasing; normal_phase requires every point below
// the critical coupling.
SweepTable sweep_table(const open::SystemSpec& spec, Parameter parameter, const std::vector<double>& grid,
                       SweepMode mode, const SweepOptions& options = {});
SweepResult sweep(const open::SystemSpec& spec, Parameter parameter, const std::vector<double>& grid,
                  SweepMode mode, Observable observable, const SweepOptions& options = {});

// Three-point finite differences on a possibly non-uniform grid, one-sided at
// the ends. Exact for quadratics.
SweepResult derivative(const SweepResult& curve);

struct Extremum {
    double location;
    double value;
};
// Grid extremum refined by the parabola through it and its two neighbours.
Extremum find_minimum(const SweepResult& curve);
Extremum find_maximum(const SweepResult& curve);

enum class FitKind { power_law, log2_linear };

struct ScalingFit {
    double exponent{0.0};     // slope
    double exponent_err{0.0}; // OLS standard error
    double prefactor{0.0};    // power_law: y = prefactor N^exponent; log2_linear: intercept
    std::vector<std::pair<double, double>> points;
    FitKind kind{FitKind::power_law};
};

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points);
ScalingFit fit_log_scaling(const std::vector<std::pair<double, double>>& points);

std::vector<double> uniform_grid(double min, double max, double step);

// Smallest converged Fock cutoff at the largest coupling of `grid`.
int auto_cutoff(const open::SystemSpec& spec, Parameter parameter, const std::vector<double>& grid,
                double rel_tol);

struct ScalingPoint {
    int N{0};
    int n_max{0};
    SweepResult current;
    SweepResult slope;
    Extremum minimum{};
};

struct ScalingAnalysis {
    std::vector<ScalingPoint> points;
    ScalingFit shift;        // lambda_m - lambda_c against N
    ScalingFit depth;        // slope minimum against log2 N
    ScalingFit depth_loglog; // |slope minimum| against N
};

// Ground-state current curves for each N (cutoff from auto_cutoff), the
// current-derivative minimum, and the two scaling fits.
ScalingAnalysis scaling_analysis(const open::SystemSpec& spec, const std::vector<int>& Ns,
                                 const std::vector<double>& grid, double cutoff_rel_tol,
                                 const SweepOptions& options = {});

} // namespace opendicke::criticality
