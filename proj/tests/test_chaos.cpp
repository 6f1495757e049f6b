#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "opendicke/chaos.hpp"

using namespace opendicke;
using namespace opendicke::chaos;

namespace {

OperatorMatrix diagonal(const std::vector<double>& values)
{
    const int d = static_cast<int>(values.size());
    SparseMatrix m(d, d);
    for (int k = 0; k < d; ++k) m.insert(k, k) = values[k];
    return OperatorMatrix(m, {d});
}

} // namespace

TEST_CASE("closed-system gaps oracle")
{
    const auto gaps = closed_gaps_oracle(diagonal({0.0, 1.0, 3.0}));
    CHECK(gaps == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("undamped Liouvillian spectrum is every energy gap")
{
    SUBCASE("hand-enumerated decoupled levels")
    {
        const dicke::DickeParams p{1.0, 0.7, 0.0, 1, 1};
        const auto r = damped_spectrum(p, 0.0);
        const std::vector<double> expected{0.3, 0.7, 0.7, 1.0, 1.0, 1.7};
        REQUIRE(r.positive_imag.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(r.positive_imag[k] - expected[k]) < 1e-12);
    }
    SUBCASE("coupled instance")
    {
        const dicke::DickeParams p{1.0, 1.0, 0.35, 2, 5};
        const auto r = damped_spectrum(p, 0.0);
        const auto gaps = closed_gaps_oracle(dicke::dicke_hamiltonian(p), r.zero_tol);
        REQUIRE(gaps.size() == r.positive_imag.size());
        for (std::size_t k = 0; k < gaps.size(); ++k) CHECK(std::abs(gaps[k] - r.positive_imag[k]) < 1e-8);
        const int d = p.basis().dimension();
        CHECK(r.removed_zero_count == d);
        CHECK(r.positive_imag.size() == static_cast<std::size_t>((d * d - d) / 2));
    }
}

TEST_CASE("damped spectrum properties")
{
    const dicke::DickeParams p{1.0, 1.0, 0.5, 2, 5};
    const auto r = damped_spectrum(p, 0.1);
    CHECK(open::max_real_part(r.eigenvalues) <= 1e-8);
    CHECK(r.removed_zero_count == 1);
    for (double v : r.positive_imag) CHECK(v > r.zero_tol);
    CHECK(std::is_sorted(r.positive_imag.begin(), r.positive_imag.end()));

    double total = 0.0;
    for (double q : r.histogram.probabilities) total += q;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(r.histogram.centers.size() == 50);

    // Conjugate pairs.
    for (const Complex& z : r.eigenvalues) {
        const auto match = std::find_if(r.eigenvalues.begin(), r.eigenvalues.end(),
                                        [&](const Complex& w) { return std::abs(w - std::conj(z)) < 1e-9; });
        CHECK(match != r.eigenvalues.end());
    }

    CHECK_THROWS_AS(damped_spectrum({1.0, 1.0, 0.5, 6, 20}, 0.1), std::length_error);
}

TEST_CASE("open-system helper")
{
    CHECK(open::max_real_part({Complex(-1.0, 2.0), Complex(-0.5, 0.0)}) == -0.5);
}

TEST_CASE("positive imaginary branch")
{
    std::vector<Complex> closed;
    const std::vector<double> E{0.0, 1.0, 2.5};
    for (double a : E) {
        for (double b : E) closed.emplace_back(0.0, a - b);
    }
    CHECK(positive_imaginary_branch(closed, 1e-10) == std::vector<double>{1.0, 1.5, 2.5});
    CHECK(positive_imaginary_branch(std::vector<Complex>(5, Complex(0.0)), 1e-10).empty());
}

TEST_CASE("gap histogram")
{
    std::vector<double> uniform;
    for (int k = 1; k <= 5000; ++k) uniform.push_back(k / 5000.0);
    const auto h = gap_distribution(uniform, 20);
    for (double q : h.probabilities) CHECK(std::abs(q - 0.05) < 3.0 * std::sqrt(0.05 * 0.95 / 5000.0));
    CHECK(h.centers.front() == doctest::Approx(0.025));
    CHECK(h.centers.back() == doctest::Approx(0.975));
    CHECK_THROWS(gap_distribution({}, 20));
    CHECK_THROWS(gap_distribution({1.0, 2.0}, 5));

    CHECK(mass_below({1.0, 2.0, 3.0, 100.0}, 0.05) == 0.75);
}

TEST_CASE("Rabi gaps cluster on a picket fence")
{
    const dicke::DickeParams p{1.0, 1.0, 0.02, 1, 6};
    const auto gaps = closed_gaps_oracle(dicke::dicke_hamiltonian(p));
    const auto near_integer = std::count_if(gaps.begin(), gaps.end(), [](double g) {
        return std::abs(g - std::round(g)) < 0.15;
    });
    CHECK(near_integer == static_cast<long>(gaps.size()));
}

TEST_CASE("near-integrable coupling has more small-gap weight than the critical point")
{
    // At lambda = 0 the gaps are exactly degenerate integers, and coherences
    // between degenerate levels drop out of the positive branch.
    dicke::DickeParams p{1.0, 1.0, 0.05, 6, 7};
    const auto free = damped_spectrum(p, 0.1);
    p.lambda = 0.5;
    const auto critical = damped_spectrum(p, 0.1);
    CHECK(mass_below(free.positive_imag, 0.1) > mass_below(critical.positive_imag, 0.1));
}

TEST_CASE("reference distributions")
{
    const auto at_zero = reference_distributions({0.0});
    CHECK(at_zero.wigner_dyson[0] == 0.0);
    CHECK(at_zero.poisson[0] == 1.0);

    // Composite Simpson on [0, 12].
    const int n = 24000;
    const double h = 12.0 / n;
    std::vector<double> s;
    for (int k = 0; k <= n; ++k) s.push_back(k * h);
    const auto curves = reference_distributions(s);
    double integral = curves.wigner_dyson.front() + curves.wigner_dyson.back();
    for (int k = 1; k < n; ++k) integral += (k % 2 ? 4.0 : 2.0) * curves.wigner_dyson[k];
    integral *= h / 3.0;
    CHECK(std::abs(integral - 1.0) < 1e-6);
    CHECK_THROWS(reference_distributions({-0.1}));
}
