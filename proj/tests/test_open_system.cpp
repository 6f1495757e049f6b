#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "opendicke/open_system.hpp"

using namespace opendicke;
using namespace opendicke::open;

namespace {

SystemSpec fig2_spec(double lambda, int n_max)
{
    SystemSpec s;
    s.dicke = {1.0, 1.0, lambda, 4, n_max};
    s.gamma_b = 0.1;
    return s;
}

DenseMatrix random_hermitian(int d, unsigned seed)
{
    DenseMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double t = seed * 0.731 + i * 1.37 + j * 0.113;
            m(i, j) = Complex(std::sin(t * 3.1), std::cos(t * 1.7));
        }
    }
    return m + m.adjoint();
}

double max_dev(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Spin-boson pair with both factors damped: unique steady state.
LiouvillianMatrix damped_pair(double lambda)
{
    const dicke::DickeParams p{1.0, 0.8, lambda, 1, 1};
    const BasisSpec basis = p.basis();
    const auto e = ops::embed_dicke_operators(basis);
    return assemble_liouvillian(dicke::dicke_hamiltonian(p), {{0.3, e.a}, {0.2, e.Jminus}}, basis);
}

} // namespace

TEST_CASE("Hamiltonian structure")
{
    SystemSpec s = fig2_spec(0.3, 6);
    s.include_tq = false;
    CHECK(max_dev(build_hamiltonian(s).dense(), dicke::dicke_hamiltonian(s.dicke).dense()) == 0.0);

    s.include_tq = true;
    s.g = 0.0;
    s.epsilon = 0.0;
    s.delta = 0.0;
    const DenseMatrix H = build_hamiltonian(s).dense();
    const DenseMatrix hd = dicke::dicke_hamiltonian(s.dicke).dense();
    const int d = hd.rows();
    for (int t = 0; t < 3; ++t) CHECK(max_dev(H.block(t * d, t * d, d, d), hd) == 0.0);
    CHECK(H.block(0, d, d, 2 * d).cwiseAbs().maxCoeff() == 0.0);

    const SystemSpec fig = fig2_spec(0.5, 12);
    const auto H2 = build_hamiltonian(fig);
    CHECK(H2.dim() == 3 * 13 * 5);
    CHECK(max_norm(H2 - H2.adjoint()) < 1e-14);
}

TEST_CASE("trace and Hermiticity preservation")
{
    for (double lambda : {0.0, 0.3, 0.7}) {
        for (bool tq : {false, true}) {
            SystemSpec s = fig2_spec(lambda, 5);
            s.include_tq = tq;
            s.epsilon = 0.05;
            const auto L = build_liouvillian(s);
            const Vector left = L.data.transpose() * trace_functional(L.hilbert_dim);
            CHECK(left.norm() <= 1e-10 * max_norm(L.data));

            const DenseMatrix rho = random_hermitian(L.hilbert_dim, 7);
            const DenseMatrix out = unvectorize(L.data * vectorize(rho), L.hilbert_dim);
            CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("vectorization is column stacking")
{
    DenseMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const Vector v = vectorize(m);
    CHECK(v[1] == Complex(3.0));
    CHECK(v[2] == Complex(2.0));
    CHECK(max_dev(unvectorize(v, 2), m) == 0.0);
    CHECK(trace_functional(2).dot(v) == Complex(5.0));
}

TEST_CASE("decaying boson relaxes to the vacuum")
{
    const BasisSpec basis{4, 1, false};
    const auto e = ops::embed_dicke_operators(basis);
    const OperatorMatrix zero(SparseMatrix(basis.dimension(), basis.dimension()), basis.dims());
    const auto L = assemble_liouvillian(zero, {{0.4, e.a}, {0.1, e.Jminus}}, basis);
    const auto rho = steady_state(L);
    CHECK(std::abs(rho.data(basis.index(0, 0), basis.index(0, 0)) - 1.0) < 1e-12);
    CHECK(rho.expectation(e.number) < 1e-12);
}

TEST_CASE("closed system has a purely imaginary spectrum")
{
    SystemSpec s;
    s.dicke = {1.0, 1.0, 0.4, 2, 3};
    s.include_tq = false;
    const auto eigs = dense_spectrum(build_liouvillian(s));
    for (const Complex& z : eigs) CHECK(std::abs(z.real()) < 1e-10);
}

TEST_CASE("undamped spin leaves a degenerate steady-state manifold")
{
    SystemSpec s;
    s.dicke = {1.0, 1.0, 0.0, 2, 3};
    s.include_tq = false;
    s.gamma_b = 0.2;
    try {
        (void)steady_state(build_liouvillian(s));
        FAIL("expected DegenerateSteadyStateError");
    } catch (const DegenerateSteadyStateError& e) {
        CHECK(e.zero_modes() == 3);
    }
}

TEST_CASE("weak coupling leaves the cavity nearly empty")
{
    SystemSpec s;
    s.dicke = {1.0, 1.0, 0.05, 2, 6};
    s.include_tq = false;
    s.gamma_b = 0.5;
    const BasisSpec b = s.basis();
    const OperatorMatrix n = ops::embed_dicke_operators(b).number;
    auto solve = [&](double lambda) {
        s.dicke.lambda = lambda;
        const auto rho = steady_state(build_liouvillian(s));
        rho.validate();
        return std::pair{1.0 - rho.data(b.index(0, 0), b.index(0, 0)).real(), rho.expectation(n)};
    };
    const auto [coarse_deficit, coarse_n] = solve(0.05);
    const auto [fine_deficit, fine_n] = solve(0.025);
    CHECK(coarse_deficit < 0.05);
    CHECK(fine_deficit < 0.05);
    // The photon number is second order in the coupling.
    CHECK(coarse_n < 2e-3);
    CHECK(fine_n / coarse_n == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("transport-qubit populations match the Bloch-equation balance")
{
    const double eps = 0.07, delta = 0.1, gl = 0.3, gr = 0.05;
    SystemSpec s;
    s.dicke = {1.0, 1.0, 0.3, 1, 3};
    s.gamma_b = 0.5;
    s.g = 0.0;
    s.epsilon = eps;
    s.delta = delta;
    s.gamma_L = gl;
    s.gamma_R = gr;
    const auto rho = steady_state(build_liouvillian(s));

    // (rho_00, rho_LL, rho_RR, x, y), rho_LR = x + i y; first row replaced by
    // the normalization.
    Eigen::Matrix<double, 5, 5> M;
    M << 1, 1, 1, 0, 0,
         gl, 0, 0, 0, -2 * delta,
         0, 0, -gr, 0, 2 * delta,
         0, 0, 0, -gr / 2, 2 * eps,
         0, delta, -delta, -2 * eps, -gr / 2;
    Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();
    rhs[0] = 1.0;
    const Eigen::Matrix<double, 5, 1> x = M.fullPivLu().solve(rhs);

    const auto tq = ops::tq_operators();
    const BasisSpec b = s.basis();
    auto pop = [&](const OperatorMatrix& proj) { return rho.expectation(ops::embed_tq(proj, b)); };
    CHECK(std::abs(pop(tq.s_L * tq.s_L.adjoint()) - x[0]) < 1e-10);
    CHECK(std::abs(pop(tq.s_L.adjoint() * tq.s_L) - x[1]) < 1e-10);
    CHECK(std::abs(pop(tq.s_R.adjoint() * tq.s_R) - x[2]) < 1e-10);
}

TEST_CASE("pseudoinverse matches the Drazin inverse")
{
    const auto L = damped_pair(0.4);
    const auto rho = steady_state(L);
    const DenseMatrix Ld = DenseMatrix(L.data);
    Eigen::ComplexEigenSolver<DenseMatrix> es(Ld);
    const DenseMatrix V = es.eigenvectors();
    const DenseMatrix Vinv = V.inverse();
    Eigen::VectorXcd inv = Eigen::VectorXcd::Zero(Ld.rows());
    int zeros = 0;
    for (Eigen::Index k = 0; k < Ld.rows(); ++k) {
        if (std::abs(es.eigenvalues()[k]) < 1e-10) {
            ++zeros;
        } else {
            inv[k] = 1.0 / es.eigenvalues()[k];
        }
    }
    REQUIRE(zeros == 1);
    const DenseMatrix drazin = V * inv.asDiagonal() * Vinv;

    const Vector y = vectorize(random_hermitian(L.hilbert_dim, 3));
    const Vector x = pseudoinverse_apply(L, rho, y);
    CHECK((x - drazin * y).norm() < 1e-10 * std::max(1.0, x.norm()));

    const SteadyStateSolver solver(L);
    CHECK((solver.apply_pseudoinverse(y) - drazin * y).norm() < 1e-10 * std::max(1.0, x.norm()));
    CHECK(pseudoinverse_apply(L, rho, vectorize(rho.data)).norm() < 1e-12);
}

TEST_CASE("steady-state invariants across the coupling grid")
{
    for (double lambda = 0.1; lambda <= 0.91; lambda += 0.2) {
        CAPTURE(lambda);
        SystemSpec s = fig2_spec(lambda, 6);
        const auto L = build_liouvillian(s);
        const SteadyStateSolver solver(L);
        const auto& rho = solver.steady_state();
        CHECK(rho.min_eigenvalue() >= -1e-8);
        CHECK(rho.trace_deviation() < 1e-10);
        CHECK(rho.hermiticity_deviation() < 1e-10);
        CHECK(solver.residual() <= 1e-10 * std::max(1.0, max_norm(L.data)));
    }
}

TEST_CASE("dense spectrum agrees with a complex eigensolver and lies in the left half-plane")
{
    SystemSpec s;
    s.dicke = {1.0, 1.0, 0.5, 2, 3};
    s.include_tq = false;
    s.gamma_b = 0.3;
    const auto L = build_liouvillian(s);
    const Eigen::VectorXd parity = ops::parity_diagonal(2, 3);
    auto fast = dense_spectrum(L, &parity);
    Eigen::ComplexEigenSolver<DenseMatrix> es{DenseMatrix(L.data), false};
    std::vector<Complex> ref(es.eigenvalues().begin(), es.eigenvalues().end());
    REQUIRE(fast.size() == ref.size());
    // Match each reference eigenvalue to its nearest unused partner.
    std::vector<bool> used(fast.size(), false);
    double worst = 0.0;
    for (const Complex& z : ref) {
        std::size_t best = 0;
        double dist = INFINITY;
        for (std::size_t k = 0; k < fast.size(); ++k) {
            if (!used[k] && std::abs(fast[k] - z) < dist) {
                dist = std::abs(fast[k] - z);
                best = k;
            }
        }
        used[best] = true;
        worst = std::max(worst, dist);
    }
    CHECK(worst < 1e-9);
    CHECK(max_real_part(fast) <= 1e-8);
    CHECK_THROWS(dense_spectrum(L, nullptr, 10));
}

TEST_CASE("system parameter validation")
{
    SystemSpec s;
    s.gamma_b = -0.1;
    CHECK_THROWS(s.validate());
    s.gamma_b = 0.0;
    s.gamma_L = -1.0;
    CHECK_THROWS(s.validate());
}
