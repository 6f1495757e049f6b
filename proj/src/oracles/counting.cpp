// counting.cpp — Counting-field cumulants and two-mode covariances

#include "opendicke/oracles/counting.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace opendicke::oracles {

namespace {

// Second-order Taylor jet in (chi, lambda).
struct Jet {
    double v{0}, x{0}, l{0}, xx{0}, xl{0}, ll{0};
};

Jet operator-(const Jet& a, const Jet& b)
{
    return {a.v - b.v, a.x - b.x, a.l - b.l, a.xx - b.xx, a.xl - b.xl, a.ll - b.ll};
}

Jet operator*(const Jet& a, const Jet& b)
{
    return {a.v * b.v,
            a.x * b.v + a.v * b.x,
            a.l * b.v + a.v * b.l,
            a.xx * b.v + 2 * a.x * b.x + a.v * b.xx,
            a.xl * b.v + a.x * b.l + a.l * b.x + a.v * b.xl,
            a.ll * b.v + 2 * a.l * b.l + a.v * b.ll};
}

Jet reciprocal(const Jet& g)
{
    const double v = g.v;
    return {1 / v,
            -g.x / (v * v),
            -g.l / (v * v),
            2 * g.x * g.x / (v * v * v) - g.xx / (v * v),
            2 * g.x * g.l / (v * v * v) - g.xl / (v * v),
            2 * g.l * g.l / (v * v * v) - g.ll / (v * v)};
}

Jet constant(double c) { return {c, 0, 0, 0, 0, 0}; }

constexpr int kDim = 5;
using JetMatrix = std::array<std::array<Jet, kDim>, kDim>;

Jet determinant(JetMatrix m)
{
    Jet det = constant(1.0);
    for (int col = 0; col < kDim; ++col) {
        int pivot = col;
        for (int r = col + 1; r < kDim; ++r) {
            if (std::abs(m[r][col].v) > std::abs(m[pivot][col].v)) pivot = r;
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = constant(-1.0) * det;
        }
        det = det * m[col][col];
        if (col == kDim - 1) break;
        if (m[col][col].v == 0.0) throw std::runtime_error("three_state_cumulants: rank deficient rate matrix");
        const Jet inv = reciprocal(m[col][col]);
        for (int r = col + 1; r < kDim; ++r) {
            const Jet factor = m[r][col] * inv;
            for (int c = col; c < kDim; ++c) m[r][c] = m[r][c] - factor * m[col][c];
        }
    }
    return det;
}

} // namespace

Cumulants three_state_cumulants(double epsilon, double delta, double gamma_L, double gamma_R)
{
    if (!(gamma_L > 0.0) || !(gamma_R > 0.0)) {
        throw std::invalid_argument("three_state_cumulants: rates must be > 0");
    }
    // State (rho_00, rho_LL, rho_RR, x, y) with rho_LR = x + i y.
    JetMatrix m{};
    m[0][0] = constant(-gamma_L);
    m[0][2] = {gamma_R, gamma_R, 0, gamma_R, 0, 0}; // Gamma_R e^chi
    m[1][0] = constant(gamma_L);
    m[1][4] = constant(-2 * delta);
    m[2][2] = constant(-gamma_R);
    m[2][4] = constant(2 * delta);
    m[3][3] = constant(-gamma_R / 2);
    m[3][4] = constant(2 * epsilon);
    m[4][1] = constant(delta);
    m[4][2] = constant(-delta);
    m[4][3] = constant(-2 * epsilon);
    m[4][4] = constant(-gamma_R / 2);
    for (int k = 0; k < kDim; ++k) m[k][k] = m[k][k] - Jet{0, 0, 1, 0, 0, 0};

    const Jet F = determinant(m);
    if (F.l == 0.0) throw std::runtime_error("three_state_cumulants: stationary state not unique");
    const double d1 = -F.x / F.l;
    const double d2 = -(F.xx + 2 * F.xl * d1 + F.ll * d1 * d1) / F.l;
    return {d1, d2};
}

Cumulants two_state_cumulants(double gamma_in, double gamma_out)
{
    if (!(gamma_in > 0.0) || !(gamma_out > 0.0)) {
        throw std::invalid_argument("two_state_cumulants: rates must be > 0");
    }
    const double sum = gamma_in + gamma_out;
    const double current = gamma_in * gamma_out / sum;
    return {current, current * (gamma_in * gamma_in + gamma_out * gamma_out) / (sum * sum)};
}

double two_mode_occupation(double omega, double omega0, double lambda)
{
    // H = p^T T p / 2 + x^T V x / 2 with x = (a + a^dag)/sqrt 2.
    const Eigen::Vector2d t_sqrt(std::sqrt(omega), std::sqrt(omega0));
    Eigen::Matrix2d V;
    V << omega, 2 * lambda, 2 * lambda, omega0;
    const Eigen::Matrix2d K = t_sqrt.asDiagonal() * V * t_sqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(K);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw std::domain_error("two_mode_occupation: quadratic form is not bounded below");
    }
    const Eigen::Vector2d freq = es.eigenvalues().cwiseSqrt();
    const Eigen::Matrix2d Omega = es.eigenvectors() * freq.asDiagonal() * es.eigenvectors().transpose();
    const Eigen::Matrix2d Omega_inv =
        es.eigenvectors() * freq.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    const double xx = 0.5 * omega * Omega_inv(0, 0);
    const double pp = 0.5 * Omega(0, 0) / omega;
    return 0.5 * (xx + pp - 1.0);
}

} // namespace opendicke::oracles
