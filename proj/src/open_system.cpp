// open_system.cpp — Liouvillian assembly, steady states and spectra

#include "opendicke/open_system.hpp"
#include "opendicke/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/UmfPackSupport>
#include <unsupported/Eigen/KroneckerProduct>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace opendicke::open {

using Triplet = Eigen::Triplet<Complex>;

void SystemSpec::validate() const
{
    dicke.validate();
    if (gamma_b < 0.0) throw std::invalid_argument("gamma_b must be >= 0");
    if (include_tq) {
        if (gamma_L < 0.0) throw std::invalid_argument("gamma_L must be >= 0");
        if (gamma_R < 0.0) throw std::invalid_argument("gamma_R must be >= 0");
    }
}

OperatorMatrix build_hamiltonian(const SystemSpec& spec)
{
    spec.validate();
    OperatorMatrix hd = dicke::dicke_hamiltonian(spec.dicke);
    if (!spec.include_tq) return hd;

    const BasisSpec basis = spec.basis();
    const auto tq = ops::tq_operators();
    const auto dicke_ops = ops::embed_dicke_operators(basis);
    OperatorMatrix H = ops::tensor({ops::identity(3), hd}) +
                       Complex(spec.epsilon) * ops::embed_tq(tq.sigma_z, basis) +
                       Complex(spec.delta) * ops::embed_tq(tq.sigma_x, basis) +
                       Complex(spec.g) * (ops::embed_tq(tq.sigma_z, basis) * dicke_ops.number);
    H.data.prune(Complex(0.0));
    H.dims = basis.dims();
    H.label = "H";
    return H;
}

LiouvillianMatrix assemble_liouvillian(const OperatorMatrix& H, const std::vector<JumpTerm>& jumps,
                                       const BasisSpec& basis)
{
    const int d = H.dim();
    if (d != basis.dimension()) throw std::invalid_argument("assemble_liouvillian: basis/H dimension mismatch");
    SparseMatrix id(d, d);
    id.setIdentity();

    SparseMatrix Ht = H.data.transpose();
    SparseMatrix L = Complex(0.0, -1.0) * (SparseMatrix(Eigen::kroneckerProduct(id, H.data)) -
                                           SparseMatrix(Eigen::kroneckerProduct(Ht, id)));
    for (const JumpTerm& jump : jumps) {
        if (jump.rate == 0.0) continue;
        if (jump.op.dim() != d) throw std::invalid_argument("assemble_liouvillian: jump dimension mismatch");
        const SparseMatrix& X = jump.op.data;
        SparseMatrix XdX = X.adjoint() * X;
        SparseMatrix XdXt = XdX.transpose();
        SparseMatrix Xc = X.conjugate();
        SparseMatrix sandwich = Eigen::kroneckerProduct(Xc, X);
        SparseMatrix left = Eigen::kroneckerProduct(id, XdX);
        SparseMatrix right = Eigen::kroneckerProduct(XdXt, id);
        L += Complex(jump.rate) * (sandwich - 0.5 * left - 0.5 * right);
    }
    L.prune(Complex(0.0));
    L.makeCompressed();
    return {std::move(L), basis, d};
}

std::vector<JumpTerm> jump_terms(const SystemSpec& spec)
{
    const BasisSpec basis = spec.basis();
    std::vector<JumpTerm> jumps;
    if (spec.include_tq) {
        const auto tq = ops::tq_operators();
        if (spec.gamma_L > 0.0) jumps.push_back({spec.gamma_L, ops::embed_tq(tq.s_L.adjoint(), basis)});
        if (spec.gamma_R > 0.0) jumps.push_back({spec.gamma_R, ops::embed_tq(tq.s_R, basis)});
    }
    if (spec.gamma_b > 0.0) jumps.push_back({spec.gamma_b, ops::embed_dicke_operators(basis).a});
    return jumps;
}

LiouvillianMatrix build_liouvillian(const SystemSpec& spec)
{
    return assemble_liouvillian(build_hamiltonian(spec), jump_terms(spec), spec.basis());
}

Vector vectorize(const DenseMatrix& rho)
{
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const Vector& v, int dim)
{
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw std::invalid_argument("unvectorize: size mismatch");
    return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

Vector trace_functional(int dim)
{
    Vector w = Vector::Zero(static_cast<Eigen::Index>(dim) * dim);
    for (int i = 0; i < dim; ++i) w[i + i * dim] = 1.0;
    return w;
}

double DensityMatrix::trace_deviation() const { return std::abs(data.trace() - Complex(1.0)); }

double DensityMatrix::hermiticity_deviation() const
{
    return (data - data.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const
{
    const DenseMatrix herm = 0.5 * (data + data.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()[0];
}

void DensityMatrix::validate(double tol, double positivity_tol) const
{
    if (hermiticity_deviation() > tol) throw std::runtime_error("density matrix is not Hermitian");
    if (trace_deviation() > tol) throw std::runtime_error("density matrix does not have unit trace");
    if (min_eigenvalue() < -positivity_tol) throw std::runtime_error("density matrix is not positive semidefinite");
}

double DensityMatrix::expectation(const OperatorMatrix& op) const
{
    if (op.dim() != data.rows()) throw std::invalid_argument("expectation: dimension mismatch");
    return (op.data * data).trace().real();
}

struct SteadyStateSolver::Factorization {
    SparseMatrix constrained;
    Eigen::UmfPackLU<SparseMatrix> lu;
};

namespace {

int count_zero_modes_dense(const SparseMatrix& L, double threshold)
{
    Eigen::ComplexEigenSolver<DenseMatrix> solver(DenseMatrix(L), false);
    int count = 0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        if (std::abs(solver.eigenvalues()[k]) < threshold) ++count;
    }
    return count;
}

constexpr Eigen::Index kDenseCountLimit = 4096;

} // namespace

SteadyStateSolver::SteadyStateSolver(const LiouvillianMatrix& L, const SolverTolerances& tol)
    : lu_(std::make_unique<Factorization>()), hilbert_dim_(L.hilbert_dim), vec_dim_(L.data.rows()), tol_(tol)
{
    const int d = L.hilbert_dim;
    const Eigen::Index n = L.data.rows();
    const double scale = std::max(1.0, max_norm(L.data));
    pivot_row_ = 0;

    std::vector<Triplet> entries;
    entries.reserve(L.data.nonZeros() + d);
    for (int col = 0; col < L.data.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(L.data, col); it; ++it) {
            if (it.row() != pivot_row_) entries.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (int i = 0; i < d; ++i) entries.emplace_back(pivot_row_, i + i * d, 1.0);
    lu_->constrained.resize(n, n);
    lu_->constrained.setFromTriplets(entries.begin(), entries.end());
    lu_->constrained.makeCompressed();

    auto degenerate = [&](const std::string& why) {
        const int count = n <= kDenseCountLimit ? count_zero_modes_dense(L.data, tol_.degeneracy * scale) : 2;
        return DegenerateSteadyStateError("steady state is not unique (" + why + "): " + std::to_string(count) +
                                              (n <= kDenseCountLimit ? "" : "+") + " zero modes",
                                          count);
    };

    lu_->lu.compute(lu_->constrained);
    if (lu_->lu.info() != Eigen::Success) throw degenerate("singular constrained system");

    Vector rhs = Vector::Zero(n);
    rhs[pivot_row_] = 1.0;
    const Vector x = lu_->lu.solve(rhs);
    if (!x.allFinite()) throw degenerate("non-finite solution");

    residual_ = (L.data * x).norm();
    rho_ = DensityMatrix{unvectorize(x, d), L.basis};
    if (residual_ > tol_.steady_residual * scale) {
        throw std::runtime_error("steady state residual " + std::to_string(residual_) + " exceeds tolerance");
    }
    if (slowest_rate_estimate(12) < tol_.degeneracy * scale) throw degenerate("vanishing relaxation gap");

    rho_.validate(1e-10, 1e-8);
    rho_.data = 0.5 * (rho_.data + rho_.data.adjoint()).eval();
}

SteadyStateSolver::~SteadyStateSolver() = default;
SteadyStateSolver::SteadyStateSolver(SteadyStateSolver&&) noexcept = default;
SteadyStateSolver& SteadyStateSolver::operator=(SteadyStateSolver&&) noexcept = default;

Vector SteadyStateSolver::solve_constrained(Vector rhs) const
{
    return lu_->lu.solve(rhs);
}

Vector SteadyStateSolver::apply_pseudoinverse(const Vector& y) const
{
    const int d = hilbert_dim_;
    const Vector rho_vec = vectorize(rho_.data);
    const Vector tr = trace_functional(d);
    Vector projected = y - rho_vec * tr.dot(y);
    // The pivot row carries the trace constraint Tr x = 0, so x = Q x.
    projected[pivot_row_] = 0.0;
    return solve_constrained(std::move(projected));
}

double SteadyStateSolver::slowest_rate_estimate(int iterations) const
{
    const Eigen::Index n = vec_dim_;
    if (n <= 1) return std::numeric_limits<double>::infinity();
    Vector x(n);
    for (Eigen::Index k = 0; k < n; ++k) x[k] = Complex(std::cos(0.37 * k + 0.1), std::sin(1.3 * k));
    x.normalize();
    double growth = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Vector y = apply_pseudoinverse(x);
        const double norm = y.norm();
        if (!std::isfinite(norm)) return 0.0;
        if (norm == 0.0) return std::numeric_limits<double>::infinity();
        growth = norm;
        x = y / norm;
    }
    return 1.0 / growth;
}

DensityMatrix steady_state(const LiouvillianMatrix& L, const SolverTolerances& tol)
{
    return SteadyStateSolver(L, tol).steady_state();
}

Vector pseudoinverse_apply(const LiouvillianMatrix& L, const DensityMatrix& rho_ss, const Vector& y)
{
    const int d = L.hilbert_dim;
    const Eigen::Index n = L.data.rows();
    if (y.size() != n) throw std::invalid_argument("pseudoinverse_apply: size mismatch");
    const Vector rho_vec = vectorize(rho_ss.data);
    const Vector tr = trace_functional(d);

    std::vector<Triplet> entries;
    for (int col = 0; col < L.data.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(L.data, col); it; ++it) {
            if (it.row() != 0) entries.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (int i = 0; i < d; ++i) entries.emplace_back(0, i + i * d, 1.0);
    SparseMatrix A(n, n);
    A.setFromTriplets(entries.begin(), entries.end());
    A.makeCompressed();

    Eigen::UmfPackLU<SparseMatrix> lu(A);
    if (lu.info() != Eigen::Success) throw std::runtime_error("pseudoinverse_apply: factorization failed");
    Vector rhs = y - rho_vec * tr.dot(y);
    rhs[0] = 0.0;
    Vector x = lu.solve(rhs);
    const double residual = (L.data * x - (y - rho_vec * tr.dot(y))).norm();
    if (!x.allFinite() || residual > 1e-8 * std::max(1.0, y.norm()) * std::max(1.0, max_norm(L.data))) {
        throw ConvergenceError("pseudoinverse_apply: solve did not meet tolerance", 1, residual);
    }
    return x - rho_vec * tr.dot(x);
}

std::vector<Complex> dense_spectrum(const LiouvillianMatrix& L, const Eigen::VectorXd* parity,
                                    int max_vectorized_dim)
{
    const int d = L.hilbert_dim;
    const Eigen::Index n = L.data.rows();
    if (n > max_vectorized_dim) {
        throw std::invalid_argument("dense_spectrum: vectorized dimension " + std::to_string(n) +
                                    " exceeds guard " + std::to_string(max_vectorized_dim) +
                                    "; reduce n_max");
    }
    if (parity && parity->size() != d) throw std::invalid_argument("dense_spectrum: parity size mismatch");

    // Orthonormal real coordinates of Hermitian matrices: diagonal entries,
    // then sqrt(2) Re and sqrt(2) Im of each upper-triangular entry.
    std::vector<Triplet> basis;
    std::vector<int> sector;
    basis.reserve(2 * n);
    sector.reserve(n);
    const double r = std::sqrt(0.5);
    int k = 0;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i <= j; ++i) {
            const int s = parity ? static_cast<int>((*parity)[i] * (*parity)[j]) : 1;
            if (i == j) {
                basis.emplace_back(i + j * d, k++, 1.0);
                sector.push_back(s);
            } else {
                basis.emplace_back(i + j * d, k, r);
                basis.emplace_back(j + i * d, k++, r);
                sector.push_back(s);
                basis.emplace_back(i + j * d, k, Complex(0.0, r));
                basis.emplace_back(j + i * d, k++, Complex(0.0, -r));
                sector.push_back(s);
            }
        }
    }
    SparseMatrix T(n, n);
    T.setFromTriplets(basis.begin(), basis.end());
    SparseMatrix Td = T.adjoint();
    SparseMatrix LT = L.data * T;
    SparseMatrix real_rep = Td * LT;

    std::vector<Complex> eigenvalues;
    eigenvalues.reserve(n);
    for (int target : {1, -1}) {
        std::vector<int> local(n, -1);
        int size = 0;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (sector[c] == target) local[c] = size++;
        }
        if (size == 0) continue;
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(size, size);
        for (int col = 0; col < real_rep.outerSize(); ++col) {
            if (local[col] < 0) continue;
            for (SparseMatrix::InnerIterator it(real_rep, col); it; ++it) {
                if (local[it.row()] < 0) {
                    if (std::abs(it.value()) > 1e-12) throw std::logic_error("dense_spectrum: parity does not commute with L");
                    continue;
                }
                block(local[it.row()], local[col]) = it.value().real();
            }
        }
        std::vector<double> wr(size), wi(size);
        const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', size, block.data(), size, wr.data(),
                                              wi.data(), nullptr, 1, nullptr, 1);
        if (info != 0) throw std::runtime_error("dense_spectrum: dgeev failed with info " + std::to_string(info));
        for (int e = 0; e < size; ++e) eigenvalues.emplace_back(wr[e], wi[e]);
    }
    return eigenvalues;
}

double max_real_part(const std::vector<Complex>& eigenvalues)
{
    double best = -std::numeric_limits<double>::infinity();
    for (const Complex& z : eigenvalues) best = std::max(best, z.real());
    return best;
}

} // namespace opendicke::open
