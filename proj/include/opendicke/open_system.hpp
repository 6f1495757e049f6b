// open_system.hpp — Liouvillian assembly, steady states and the projected pseudoinverse
//
// Density matrices are vectorized by column stacking: vec(rho)[i + j*d] = rho(i, j),
// so vec(A rho B) = (B^T (x) A) vec(rho) and -i[H, .] -> -i (I (x) H - H^T (x) I).

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "opendicke/dicke.hpp"
#include "opendicke/operators.hpp"

namespace opendicke::open {

struct SolverTolerances {
    double eigen_residual{1e-10};
    double cutoff_rel_tol{1e-6};
    double steady_residual{1e-10};
    double degeneracy{1e-8}; // relative to the Liouvillian scale

    bool operator==(const SolverTolerances&) const = default;
};

struct SystemSpec {
    dicke::DickeParams dicke;
    double epsilon{0.0};
    double delta{0.1};   // coherent TQ tunneling, identified with T_c
    double g{0.1};       // dispersive coupling
    double gamma_L{0.1};
    double gamma_R{0.1};
    double gamma_b{0.0}; // cavity decay
    bool include_tq{true};
    SolverTolerances tolerances;

    void validate() const;
    BasisSpec basis() const { return {dicke.n_max, dicke.N, include_tq}; }
    bool operator==(const SystemSpec&) const = default;
};

// H = H_D + eps sigma_z + Delta sigma_x + g sigma_z a^dag a on TQ (x) boson (x) spin.
OperatorMatrix build_hamiltonian(const SystemSpec& spec);

struct JumpTerm {
    double rate;
    OperatorMatrix op;
};

struct LiouvillianMatrix {
    SparseMatrix data;
    BasisSpec basis;
    int hilbert_dim{0};
};

// -i[H, .] + sum_k rate_k D[X_k], D[X] rho = X rho X^dag - {X^dag X, rho}/2.
LiouvillianMatrix assemble_liouvillian(const OperatorMatrix& H, const std::vector<JumpTerm>& jumps,
                                       const BasisSpec& basis);

// Jump terms: Gamma_L D[s_L^dag], Gamma_R D[s_R], gamma_b D[a] (zero rates omitted).
std::vector<JumpTerm> jump_terms(const SystemSpec& spec);
LiouvillianMatrix build_liouvillian(const SystemSpec& spec);

Vector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const Vector& v, int dim);
// Row vector w with w . vec(rho) = Tr(rho).
Vector trace_functional(int dim);

struct DensityMatrix {
    DenseMatrix data;
    BasisSpec basis;

    double trace_deviation() const;
    double hermiticity_deviation() const;
    double min_eigenvalue() const;
    // Throws std::runtime_error when an invariant is violated.
    void validate(double tol = 1e-10, double positivity_tol = 1e-8) const;
    double expectation(const OperatorMatrix& op) const;
};

class DegenerateSteadyStateError : public std::runtime_error {
public:
    DegenerateSteadyStateError(const std::string& what, int zero_modes)
        : std::runtime_error(what), zero_modes_(zero_modes) {}
    // Number of (near-)zero Liouvillian eigenvalues; a lower bound when the
    // system was too large to count them exactly.
    int zero_modes() const { return zero_modes_; }

private:
    int zero_modes_;
};

// Factorizes L with one row replaced by the trace functional. The same
// factorization yields the steady state and the projected pseudoinverse.
class SteadyStateSolver {
public:
    explicit SteadyStateSolver(const LiouvillianMatrix& L, const SolverTolerances& tol = {});
    ~SteadyStateSolver();
    SteadyStateSolver(SteadyStateSolver&&) noexcept;
    SteadyStateSolver& operator=(SteadyStateSolver&&) noexcept;

    const DensityMatrix& steady_state() const { return rho_; }
    double residual() const { return residual_; }

    // x with L x = Q y, Q = 1 - vec(rho_ss) vec(I)^T, returned as Q x.
    Vector apply_pseudoinverse(const Vector& y) const;

    // Smallest nonzero |eigenvalue| of L, estimated by power iteration on the
    // pseudoinverse.
    double slowest_rate_estimate(int iterations = 60) const;

private:
    Vector solve_constrained(Vector rhs) const;

    struct Factorization;
    std::unique_ptr<Factorization> lu_;
    int hilbert_dim_{0};
    Eigen::Index vec_dim_{0};
    SolverTolerances tol_;
    int pivot_row_{0};
    DensityMatrix rho_;
    double residual_{0.0};
};

DensityMatrix steady_state(const LiouvillianMatrix& L, const SolverTolerances& tol = {});
Vector pseudoinverse_apply(const LiouvillianMatrix& L, const DensityMatrix& rho_ss, const Vector& y);

// Eigenvalues of L through a dense solve in the real basis of Hermitian
// matrices, split by an optional conserved parity of the Hilbert basis
// (Pi rho Pi sectors). Guarded by max_vectorized_dim.
std::vector<Complex> dense_spectrum(const LiouvillianMatrix& L,
                                    const Eigen::VectorXd* parity = nullptr,
                                    int max_vectorized_dim = 10000);

double max_real_part(const std::vector<Complex>& eigenvalues);

} // namespace opendicke::open
