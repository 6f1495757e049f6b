#include <doctest.h>

#include <cmath>

#include "opendicke/dicke.hpp"
#include "opendicke/operators.hpp"

using namespace opendicke;

namespace {

double max_dev(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

DenseMatrix dense_of(std::initializer_list<std::initializer_list<double>> rows)
{
    DenseMatrix m(rows.size(), rows.begin()->size());
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

} // namespace

TEST_CASE("boson annihilation entries")
{
    CHECK(max_dev(ops::boson_annihilation(1).dense(), dense_of({{0, 1}, {0, 0}})) == 0.0);

    const DenseMatrix a2 = ops::boson_annihilation(2).dense();
    CHECK(a2(0, 1) == Complex(1.0));
    CHECK(std::abs(a2(1, 2) - std::sqrt(2.0)) < 1e-15);
    CHECK(a2.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0)));

    CHECK_THROWS_AS(ops::boson_annihilation(0), std::invalid_argument);
}

TEST_CASE("truncated canonical commutator")
{
    const int n_max = 10;
    const auto a = ops::boson_annihilation(n_max);
    DenseMatrix expected = DenseMatrix::Identity(n_max + 1, n_max + 1);
    expected(n_max, n_max) -= double(n_max + 1);
    CHECK(max_dev(commutator(a, a.adjoint()).dense(), expected) < 1e-13);
    CHECK(max_dev(a.adjoint().dense(), a.dense().adjoint()) == 0.0);
    CHECK(max_dev(a.adjoint().dense(), a.dense()) > 0.5);
}

TEST_CASE("collective spin matrices")
{
    const DenseMatrix jz1 = ops::collective_spin(1, ops::SpinComponent::z).dense();
    CHECK(max_dev(jz1, dense_of({{-0.5, 0}, {0, 0.5}})) == 0.0);

    const DenseMatrix jp2 = ops::collective_spin(2, ops::SpinComponent::plus).dense();
    // Ascending m: J+ raises index k to k+1.
    CHECK(std::abs(jp2(1, 0) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(jp2(2, 1) - std::sqrt(2.0)) < 1e-15);
    CHECK(jp2.cwiseAbs().sum() == doctest::Approx(2 * std::sqrt(2.0)));

    CHECK_THROWS_AS(ops::collective_spin(0, ops::SpinComponent::z), std::invalid_argument);
}

TEST_CASE("angular momentum algebra for several N")
{
    for (int N : {1, 2, 3, 6, 11}) {
        CAPTURE(N);
        const auto jz = ops::collective_spin(N, ops::SpinComponent::z);
        const auto jp = ops::collective_spin(N, ops::SpinComponent::plus);
        const auto jm = ops::collective_spin(N, ops::SpinComponent::minus);
        CHECK(max_dev(commutator(jp, jm).dense(), (Complex(2.0) * jz).dense()) < 1e-12);
        CHECK(max_dev(commutator(jz, jp).dense(), jp.dense()) < 1e-12);
        CHECK(max_dev(commutator(jz, jm).dense(), -jm.dense()) < 1e-12);
        CHECK(max_dev(jp.dense(), jm.dense().adjoint()) == 0.0);
        // Casimir j(j+1) on the whole multiplet.
        const double j = 0.5 * N;
        const DenseMatrix casimir = (jz * jz + Complex(0.5) * (jp * jm + jm * jp)).dense();
        CHECK(max_dev(casimir, j * (j + 1) * DenseMatrix::Identity(N + 1, N + 1)) < 1e-12);
    }
}

TEST_CASE("transport qubit operators")
{
    const auto tq = ops::tq_operators();
    CHECK(max_dev((tq.s_L.adjoint() * tq.s_L).dense(), dense_of({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}})) == 0.0);
    CHECK(max_dev((tq.s_R.adjoint() * tq.s_R).dense(), dense_of({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}})) == 0.0);
    CHECK(max_dev((tq.sigma_z * tq.sigma_z).dense(), dense_of({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 0.0);
    CHECK((tq.s_R * tq.s_L.adjoint()).dense().cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_dev(tq.sigma_x.dense(), dense_of({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}})) == 0.0);
    CHECK(max_dev(tq.sigma_z.dense(), dense_of({{0, 0, 0}, {0, 1, 0}, {0, 0, -1}})) == 0.0);
}

TEST_CASE("tensor products")
{
    const auto id6 = ops::tensor({ops::identity(2), ops::identity(3)});
    CHECK(id6.dims == std::vector<int>{2, 3});
    CHECK(max_dev(id6.dense(), DenseMatrix::Identity(6, 6)) == 0.0);

    const auto lowered = ops::tensor({ops::boson_annihilation(1), ops::identity(2)});
    const BasisSpec basis{1, 1, false};
    for (int m = 0; m < 2; ++m) {
        Vector psi = Vector::Zero(4);
        psi[basis.index(1, m)] = 1.0;
        const Vector out = lowered.data * psi;
        Vector expected = Vector::Zero(4);
        expected[basis.index(0, m)] = 1.0;
        CHECK((out - expected).norm() == 0.0);
    }

    const auto big = ops::tensor({ops::identity(3), ops::identity(13), ops::identity(5)});
    CHECK(big.dims == std::vector<int>{3, 13, 5});
    CHECK(big.dim() == 195);
    CHECK(BasisSpec{12, 4, true}.dimension() == 195);
}

TEST_CASE("operator matrix invariants")
{
    CHECK_THROWS(OperatorMatrix(SparseMatrix(2, 3), {6}));
    CHECK_THROWS(OperatorMatrix(SparseMatrix(4, 4), {2, 3}));
    CHECK_THROWS(ops::identity(2) + ops::identity(3));
    CHECK_THROWS(BasisSpec{0, 1, false}.validate());
    CHECK_THROWS(BasisSpec{1, 0, false}.validate());
}

TEST_CASE("parity operator")
{
    const int N = 4;
    const int n_max = 20;
    const auto P = ops::parity_operator(N, n_max);
    const BasisSpec basis{n_max, N, false};
    const DenseMatrix Pd = P.dense();
    CHECK(Pd(basis.index(0, 0), basis.index(0, 0)) == Complex(1.0));
    CHECK(Pd(basis.index(1, 0), basis.index(1, 0)) == Complex(-1.0));
    CHECK(max_dev((P * P).dense(), DenseMatrix::Identity(P.dim(), P.dim())) == 0.0);
    CHECK(max_dev(P.adjoint().dense(), Pd) == 0.0);

    const auto H = dicke::dicke_hamiltonian({1.0, 1.0, 0.3, N, n_max});
    CHECK(max_norm(commutator(H, P)) < 1e-12);
}

TEST_CASE("structural sparsity")
{
    const BasisSpec basis{10, 4, false};
    const auto e = ops::embed_dicke_operators(basis);
    const auto H = dicke::dicke_hamiltonian({1.0, 1.0, 0.5, 4, 10});
    for (const auto* op : {&e.a, &e.number, &e.Jz, &e.Jplus, &e.Jminus, &H}) CHECK(sparsity(*op) >= 0.9);
    const BasisSpec with_tq{12, 4, true};
    const auto tq = ops::tq_operators();
    CHECK(sparsity(ops::embed_tq(tq.sigma_x, with_tq)) >= 0.9);
}
