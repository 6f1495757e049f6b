// operators.hpp — Truncated boson, collective spin and transport-qubit operators

#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace opendicke {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Sparse operator with the subsystem dimensions it acts on. The product of
// `dims` always equals the matrix dimension.
struct OperatorMatrix {
    SparseMatrix data;
    std::vector<int> dims;
    std::string label;

    OperatorMatrix() = default;
    OperatorMatrix(SparseMatrix m, std::vector<int> d, std::string l = {});

    int dim() const { return static_cast<int>(data.rows()); }
    DenseMatrix dense() const { return DenseMatrix(data); }
    OperatorMatrix adjoint() const;

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(Complex s, const OperatorMatrix& a);
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Largest entry modulus; zero for an empty matrix.
double max_norm(const SparseMatrix& m);
double max_norm(const OperatorMatrix& m);

// Fraction of structurally zero entries.
double sparsity(const OperatorMatrix& m);

// Composite Hilbert space layout: [TQ (optional)] x [boson] x [collective spin].
struct BasisSpec {
    int n_max{1};
    int N{1};
    bool include_tq{false};

    void validate() const;
    int boson_dim() const { return n_max + 1; }
    int spin_dim() const { return N + 1; }
    double j() const { return 0.5 * N; }
    std::vector<int> dims() const;
    int dimension() const;

    // Index of |tq> (x) |n> (x) |j,m> with m_index = m + j in 0..N.
    int index(int tq, int n, int m_index) const;
    int index(int n, int m_index) const { return index(0, n, m_index); }

    bool operator==(const BasisSpec&) const = default;
};

namespace ops {

enum class SpinComponent { z, plus, minus };

OperatorMatrix identity(int dim);
OperatorMatrix boson_annihilation(int n_max);
OperatorMatrix boson_number(int n_max);
OperatorMatrix collective_spin(int N, SpinComponent component);

// 3x3 operators in the basis {|0>, |L>, |R>}.
struct TqOperators {
    OperatorMatrix sigma_z;
    OperatorMatrix sigma_x;
    OperatorMatrix s_L;
    OperatorMatrix s_R;
};
TqOperators tq_operators();

OperatorMatrix tensor(const std::vector<OperatorMatrix>& factors);
OperatorMatrix tensor(std::initializer_list<OperatorMatrix> factors);

// Diagonal of exp[i pi (n + m + j)] on |n> (x) |j,m>, entries +-1.
Eigen::VectorXd parity_diagonal(int N, int n_max);
OperatorMatrix parity_operator(int N, int n_max);

// Boson and spin operators embedded in the full composite basis described by
// `basis` (identity on the other factors).
struct EmbeddedOperators {
    OperatorMatrix a;
    OperatorMatrix number;
    OperatorMatrix Jz;
    OperatorMatrix Jplus;
    OperatorMatrix Jminus;
};
EmbeddedOperators embed_dicke_operators(const BasisSpec& basis);

// A TQ operator padded with identities on boson and spin.
OperatorMatrix embed_tq(const OperatorMatrix& tq_op, const BasisSpec& basis);

} // namespace ops
} // namespace opendicke
