// lanczos.hpp — Restarted Lanczos for the lowest eigenpair of a sparse Hermitian matrix

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opendicke/operators.hpp"

namespace opendicke {

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations, double residual)
        : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                             ", residual=" + std::to_string(residual) + ")")
        , iterations_(iterations)
        , residual_(residual) {}

    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

struct LanczosOptions {
    double tol{1e-10};      // on ||Hv - Ev||
    int krylov_dim{100};    // basis size per restart cycle
    int max_restarts{400};
    // Diagonal of a conserved +-1 symmetry; the search is confined to the
    // eigenspace with eigenvalue `sector`.
    std::optional<Eigen::VectorXd> symmetry;
    double sector{1.0};
    // Orthonormal vectors to project out (for second-lowest searches).
    std::vector<Vector> deflate;
    std::optional<Vector> start;
};

struct EigenPair {
    double value{0.0};
    Vector vector;
    double residual{0.0};
    int iterations{0}; // total matrix-vector products
};

EigenPair lowest_eigenpair(const SparseMatrix& H, const LanczosOptions& options = {});

} // namespace opendicke
