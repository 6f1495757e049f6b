// lanczos.cpp — Restarted Lanczos with full reorthogonalization

#include "opendicke/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace opendicke {

namespace {

class Projector {
public:
    explicit Projector(const LanczosOptions& options, Eigen::Index dim)
        : deflate_(options.deflate)
    {
        if (options.symmetry) {
            if (options.symmetry->size() != dim) {
                throw std::invalid_argument("lanczos: symmetry diagonal has wrong size");
            }
            mask_ = (options.symmetry->array() * options.sector > 0.0).cast<double>();
        }
    }

    void apply(Vector& v) const
    {
        if (mask_) v = v.cwiseProduct(mask_->cast<Complex>());
        for (const Vector& d : deflate_) v -= d * d.dot(v);
    }

private:
    std::optional<Eigen::VectorXd> mask_;
    const std::vector<Vector>& deflate_;
};

Vector default_start(Eigen::Index dim)
{
    // Deterministic, dense, and generic enough to overlap every eigenvector.
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double x = static_cast<double>(k);
        v[k] = Complex(1.0 + 0.5 * std::sin(1.7 * x + 0.3), 0.25 * std::cos(0.9 * x));
    }
    return v;
}

} // namespace

EigenPair lowest_eigenpair(const SparseMatrix& H, const LanczosOptions& options)
{
    const Eigen::Index dim = H.rows();
    if (dim == 0 || H.cols() != dim) throw std::invalid_argument("lanczos: matrix must be square and nonempty");

    const Projector project(options, dim);
    Vector v = options.start ? *options.start : default_start(dim);
    project.apply(v);
    if (v.norm() < 1e-300) {
        v = default_start(dim);
        project.apply(v);
    }
    if (v.norm() < 1e-300) throw std::invalid_argument("lanczos: search space is empty");
    v.normalize();

    const int m = static_cast<int>(std::min<Eigen::Index>(options.krylov_dim, dim));
    int matvecs = 0;
    double residual = std::numeric_limits<double>::infinity();
    double theta = 0.0;
    double scale = 0.0;

    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        std::vector<Vector> basis;
        basis.reserve(m + 1);
        basis.push_back(v);
        std::vector<double> alpha, beta;

        for (int k = 0; k < m; ++k) {
            Vector w = H * basis[k];
            ++matvecs;
            project.apply(w);
            const double a = basis[k].dot(w).real();
            alpha.push_back(a);
            w -= a * basis[k];
            if (k > 0) w -= beta[k - 1] * basis[k - 1];
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass) {
                for (const Vector& q : basis) w -= q * q.dot(w);
                project.apply(w);
            }
            const double b = w.norm();
            beta.push_back(b);
            scale = std::max({scale, std::abs(a), b});
            // Invariant subspace exhausted; the remainder is rounding noise.
            if (b < 1e-12 * std::max(1.0, scale) || k + 1 == m) break;
            basis.push_back(w / b);
        }

        const int size = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(size, size);
        for (int k = 0; k < size; ++k) {
            T(k, k) = alpha[k];
            if (k + 1 < size) T(k, k + 1) = T(k + 1, k) = beta[k];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(T);
        theta = tri.eigenvalues()[0];
        const Eigen::VectorXd y = tri.eigenvectors().col(0);

        Vector ritz = Vector::Zero(dim);
        for (int k = 0; k < size; ++k) ritz += y[k] * basis[k];
        project.apply(ritz);
        ritz.normalize();

        Vector r = H * ritz;
        ++matvecs;
        project.apply(r);
        theta = ritz.dot(r).real();
        r -= theta * ritz;
        residual = r.norm();
        if (residual <= options.tol) return {theta, ritz, residual, matvecs};
        v = ritz;
    }
    throw ConvergenceError("lanczos: lowest eigenpair did not converge", matvecs, residual);
}

} // namespace opendicke
