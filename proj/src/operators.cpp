// operators.cpp — Elementary operator construction and Kronecker products

#include "opendicke/operators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

namespace opendicke {

using Triplet = Eigen::Triplet<Complex>;

namespace {

SparseMatrix from_triplets(int dim, const std::vector<Triplet>& entries)
{
    SparseMatrix m(dim, dim);
    m.setFromTriplets(entries.begin(), entries.end());
    m.makeCompressed();
    return m;
}

void require_same_dims(const OperatorMatrix& a, const OperatorMatrix& b)
{
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("operator dimensions differ: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    }
}

} // namespace

OperatorMatrix::OperatorMatrix(SparseMatrix m, std::vector<int> d, std::string l)
    : data(std::move(m)), dims(std::move(d)), label(std::move(l))
{
    if (data.rows() != data.cols()) {
        throw std::invalid_argument("OperatorMatrix must be square");
    }
    const long product = std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>());
    if (product != data.rows()) {
        throw std::invalid_argument("OperatorMatrix dims do not multiply to the matrix dimension");
    }
}

OperatorMatrix OperatorMatrix::adjoint() const
{
    SparseMatrix adj = data.adjoint();
    return {std::move(adj), dims, label + "^dag"};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b)
{
    require_same_dims(a, b);
    SparseMatrix sum = a.data + b.data;
    return {std::move(sum), a.dims, a.label + "+" + b.label};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b)
{
    require_same_dims(a, b);
    SparseMatrix diff = a.data - b.data;
    return {std::move(diff), a.dims, a.label + "-" + b.label};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b)
{
    require_same_dims(a, b);
    SparseMatrix prod = a.data * b.data;
    return {std::move(prod), a.dims, a.label + "*" + b.label};
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a)
{
    SparseMatrix scaled = s * a.data;
    return {std::move(scaled), a.dims, a.label};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b)
{
    return a * b - b * a;
}

double max_norm(const SparseMatrix& m)
{
    double best = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            best = std::max(best, std::abs(it.value()));
        }
    }
    return best;
}

double max_norm(const OperatorMatrix& m) { return max_norm(m.data); }

double sparsity(const OperatorMatrix& m)
{
    const double total = static_cast<double>(m.dim()) * m.dim();
    return 1.0 - static_cast<double>(m.data.nonZeros()) / total;
}

void BasisSpec::validate() const
{
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
}

std::vector<int> BasisSpec::dims() const
{
    if (include_tq) return {3, boson_dim(), spin_dim()};
    return {boson_dim(), spin_dim()};
}

int BasisSpec::dimension() const
{
    return (include_tq ? 3 : 1) * boson_dim() * spin_dim();
}

int BasisSpec::index(int tq, int n, int m_index) const
{
    return (tq * boson_dim() + n) * spin_dim() + m_index;
}

namespace ops {

OperatorMatrix identity(int dim)
{
    SparseMatrix id(dim, dim);
    id.setIdentity();
    return {std::move(id), {dim}, "I"};
}

OperatorMatrix boson_annihilation(int n_max)
{
    if (n_max < 1) throw std::invalid_argument("boson_annihilation: n_max must be >= 1");
    std::vector<Triplet> entries;
    for (int n = 1; n <= n_max; ++n) {
        entries.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    }
    return {from_triplets(n_max + 1, entries), {n_max + 1}, "a"};
}

OperatorMatrix boson_number(int n_max)
{
    if (n_max < 1) throw std::invalid_argument("boson_number: n_max must be >= 1");
    std::vector<Triplet> entries;
    for (int n = 1; n <= n_max; ++n) entries.emplace_back(n, n, static_cast<double>(n));
    return {from_triplets(n_max + 1, entries), {n_max + 1}, "n"};
}

OperatorMatrix collective_spin(int N, SpinComponent component)
{
    if (N < 1) throw std::invalid_argument("collective_spin: N must be >= 1");
    const double j = 0.5 * N;
    const int dim = N + 1;
    std::vector<Triplet> entries;
    std::string label;
    switch (component) {
    case SpinComponent::z:
        label = "Jz";
        for (int k = 0; k < dim; ++k) {
            const double m = k - j;
            if (m != 0.0) entries.emplace_back(k, k, m);
        }
        break;
    case SpinComponent::plus:
    case SpinComponent::minus:
        label = component == SpinComponent::plus ? "J+" : "J-";
        for (int k = 0; k + 1 < dim; ++k) {
            const double m = k - j;
            const double amp = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
            if (component == SpinComponent::plus) {
                entries.emplace_back(k + 1, k, amp);
            } else {
                entries.emplace_back(k, k + 1, amp);
            }
        }
        break;
    }
    return {from_triplets(dim, entries), {dim}, label};
}

TqOperators tq_operators()
{
    constexpr int empty = 0, left = 1, right = 2;
    auto single = [](std::initializer_list<Triplet> e, const char* label) {
        return OperatorMatrix(from_triplets(3, std::vector<Triplet>(e)), {3}, label);
    };
    return {
        single({{left, left, 1.0}, {right, right, -1.0}}, "sigma_z"),
        single({{left, right, 1.0}, {right, left, 1.0}}, "sigma_x"),
        single({{empty, left, 1.0}}, "s_L"),
        single({{empty, right, 1.0}}, "s_R"),
    };
}

OperatorMatrix tensor(const std::vector<OperatorMatrix>& factors)
{
    if (factors.empty()) throw std::invalid_argument("tensor: no factors");
    SparseMatrix acc = factors.front().data;
    std::vector<int> dims = factors.front().dims;
    std::string label = factors.front().label;
    for (std::size_t k = 1; k < factors.size(); ++k) {
        SparseMatrix next = Eigen::kroneckerProduct(acc, factors[k].data);
        acc = std::move(next);
        dims.insert(dims.end(), factors[k].dims.begin(), factors[k].dims.end());
        label += "(x)" + factors[k].label;
    }
    acc.makeCompressed();
    return {std::move(acc), std::move(dims), std::move(label)};
}

OperatorMatrix tensor(std::initializer_list<OperatorMatrix> factors)
{
    return tensor(std::vector<OperatorMatrix>(factors));
}

Eigen::VectorXd parity_diagonal(int N, int n_max)
{
    BasisSpec{n_max, N, false}.validate();
    Eigen::VectorXd diag((n_max + 1) * (N + 1));
    for (int n = 0; n <= n_max; ++n) {
        for (int k = 0; k <= N; ++k) {
            diag[n * (N + 1) + k] = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return diag;
}

OperatorMatrix parity_operator(int N, int n_max)
{
    const Eigen::VectorXd diag = parity_diagonal(N, n_max);
    std::vector<Triplet> entries;
    entries.reserve(diag.size());
    for (int k = 0; k < diag.size(); ++k) entries.emplace_back(k, k, diag[k]);
    return {from_triplets(static_cast<int>(diag.size()), entries), {n_max + 1, N + 1}, "Pi"};
}

EmbeddedOperators embed_dicke_operators(const BasisSpec& basis)
{
    basis.validate();
    const OperatorMatrix id_b = identity(basis.boson_dim());
    const OperatorMatrix id_s = identity(basis.spin_dim());
    auto lift = [&](const OperatorMatrix& boson, const OperatorMatrix& spin) {
        if (basis.include_tq) return tensor({identity(3), boson, spin});
        return tensor({boson, spin});
    };
    return {
        lift(boson_annihilation(basis.n_max), id_s),
        lift(boson_number(basis.n_max), id_s),
        lift(id_b, collective_spin(basis.N, SpinComponent::z)),
        lift(id_b, collective_spin(basis.N, SpinComponent::plus)),
        lift(id_b, collective_spin(basis.N, SpinComponent::minus)),
    };
}

OperatorMatrix embed_tq(const OperatorMatrix& tq_op, const BasisSpec& basis)
{
    if (!basis.include_tq) throw std::invalid_argument("embed_tq: basis has no transport qubit");
    return tensor({tq_op, identity(basis.boson_dim()), identity(basis.spin_dim())});
}

} // namespace ops
} // namespace opendicke
