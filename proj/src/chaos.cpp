// chaos.cpp — Liouvillian spectra of the damped Dicke model and gap statistics

#include "opendicke/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace opendicke::chaos {

double default_zero_tol(const std::vector<Complex>& eigenvalues)
{
    double radius = 0.0;
    for (const Complex& z : eigenvalues) radius = std::max(radius, std::abs(z));
    return 1e-10 * std::max(radius, 1.0);
}

int count_near_zero(const std::vector<Complex>& eigenvalues, double zero_tol)
{
    return static_cast<int>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                          [&](const Complex& z) { return std::abs(z) < zero_tol; }));
}

std::vector<double> positive_imaginary_branch(const std::vector<Complex>& eigenvalues, double zero_tol)
{
    std::vector<double> out;
    for (const Complex& z : eigenvalues) {
        if (z.imag() > zero_tol) out.push_back(z.imag());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Histogram gap_distribution(const std::vector<double>& values, int bins)
{
    if (values.empty()) throw std::invalid_argument("gap_distribution: empty input");
    if (bins < 10) throw std::invalid_argument("gap_distribution: bins must be >= 10");
    const double s_max = *std::max_element(values.begin(), values.end());
    if (!(s_max > 0.0)) throw std::invalid_argument("gap_distribution: values must be positive");

    std::vector<long> counts(bins, 0);
    for (double v : values) {
        const int k = std::min(bins - 1, static_cast<int>(std::floor(v / s_max * bins)));
        ++counts[std::max(k, 0)];
    }
    Histogram h;
    const double width = 1.0 / bins;
    for (int k = 0; k < bins; ++k) {
        h.centers.push_back((k + 0.5) * width);
        h.probabilities.push_back(static_cast<double>(counts[k]) / static_cast<double>(values.size()));
    }
    return h;
}

double mass_below(const std::vector<double>& values, double fraction)
{
    if (values.empty()) throw std::invalid_argument("mass_below: empty input");
    const double s_max = *std::max_element(values.begin(), values.end());
    const auto below = std::count_if(values.begin(), values.end(), [&](double v) { return v <= fraction * s_max; });
    return static_cast<double>(below) / static_cast<double>(values.size());
}

SpectrumResult damped_spectrum(const dicke::DickeParams& p, double gamma_b, int bins, int max_vectorized_dim)
{
    if (!(gamma_b >= 0.0)) throw std::invalid_argument("damped_spectrum: gamma_b must be >= 0");
    p.validate();
    const long d = p.basis().dimension();
    if (d * d > max_vectorized_dim) {
        throw std::length_error("damped_spectrum: vectorized dimension " + std::to_string(d * d) + " exceeds " +
                                std::to_string(max_vectorized_dim) + "; reduce n_max");
    }
    open::SystemSpec spec;
    spec.dicke = p;
    spec.include_tq = false;
    spec.gamma_b = gamma_b;
    const open::LiouvillianMatrix L = open::build_liouvillian(spec);
    const Eigen::VectorXd parity = ops::parity_diagonal(p.N, p.n_max);

    SpectrumResult r;
    r.eigenvalues = open::dense_spectrum(L, &parity, max_vectorized_dim);
    r.zero_tol = default_zero_tol(r.eigenvalues);
    r.removed_zero_count = count_near_zero(r.eigenvalues, r.zero_tol);
    r.positive_imag = positive_imaginary_branch(r.eigenvalues, r.zero_tol);
    if (!r.positive_imag.empty()) {
        r.s_max = r.positive_imag.back();
        r.histogram = gap_distribution(r.positive_imag, bins);
    }
    return r;
}

std::vector<double> closed_gaps_oracle(const OperatorMatrix& H, double zero_tol)
{
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(H.dense(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("closed_gaps_oracle: eigensolver failed");
    const Eigen::VectorXd E = solver.eigenvalues();
    if (zero_tol < 0.0) zero_tol = 1e-10 * std::max(1.0, E.maxCoeff() - E.minCoeff());
    std::vector<double> gaps;
    for (Eigen::Index i = 0; i < E.size(); ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const double gap = E[i] - E[j];
            if (gap > zero_tol) gaps.push_back(gap);
        }
    }
    std::sort(gaps.begin(), gaps.end());
    return gaps;
}

ReferenceCurves reference_distributions(const std::vector<double>& s_grid)
{
    ReferenceCurves curves;
    for (double s : s_grid) {
        if (s < 0.0) throw std::invalid_argument("reference_distributions: s must be >= 0");
        curves.wigner_dyson.push_back(0.5 * std::numbers::pi * s * std::exp(-0.25 * std::numbers::pi * s * s));
        curves.poisson.push_back(std::exp(-s));
    }
    return curves;
}

} // namespace opendicke::chaos
