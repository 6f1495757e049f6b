// chaos.hpp — Liouvillian spectra of the damped Dicke model and gap statistics

#pragma once

#include <utility>
#include <vector>

#include "opendicke/dicke.hpp"
#include "opendicke/open_system.hpp"

namespace opendicke::chaos {

struct Histogram {
    std::vector<double> centers;       // in units of S_max
    std::vector<double> probabilities; // sums to 1
};

struct SpectrumResult {
    std::vector<Complex> eigenvalues;  // chi = i E + nu
    std::vector<double> positive_imag; // ascending, zeros removed
    double s_max{0.0};
    Histogram histogram;
    int removed_zero_count{0};
    double zero_tol{0.0};
};

// All Liouvillian eigenvalues of H_D with cavity decay gamma_b (no TQ).
// Throws std::length_error when the vectorized dimension exceeds the dense
// guard.
SpectrumResult damped_spectrum(const dicke::DickeParams& p, double gamma_b, int bins = 50,
                               int max_vectorized_dim = 10000);

// Default zero tolerance: 1e-10 times the spectral radius.
double default_zero_tol(const std::vector<Complex>& eigenvalues);
int count_near_zero(const std::vector<Complex>& eigenvalues, double zero_tol);

// Imaginary parts above zero_tol, ascending.
std::vector<double> positive_imaginary_branch(const std::vector<Complex>& eigenvalues, double zero_tol);

// Equal-width histogram of values / max(values) on [0, 1].
Histogram gap_distribution(const std::vector<double>& values, int bins = 50);

// Fraction of values with value / max(values) <= fraction.
double mass_below(const std::vector<double>& values, double fraction);

// Positive pairwise differences of the spectrum of H, ascending. Differences
// below zero_tol (default 1e-10 times the spread) are treated as degenerate.
std::vector<double> closed_gaps_oracle(const OperatorMatrix& H, double zero_tol = -1.0);

struct ReferenceCurves {
    std::vector<double> wigner_dyson; // (pi s / 2) exp(-pi s^2 / 4)
    std::vector<double> poisson;      // exp(-s)
};
ReferenceCurves reference_distributions(const std::vector<double>& s_grid);

} // namespace opendicke::chaos
