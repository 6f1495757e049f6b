// dicke.cpp — Dicke Hamiltonian, ground states and normal-phase solution

#include "opendicke/dicke.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "opendicke/lanczos.hpp"

namespace opendicke::dicke {

void DickeParams::validate() const
{
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (!(omega0 >= 0.0)) throw std::invalid_argument("omega0 must be >= 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    basis().validate();
}

OperatorMatrix dicke_hamiltonian(const DickeParams& p)
{
    p.validate();
    const auto a = ops::boson_annihilation(p.n_max);
    const auto n = ops::boson_number(p.n_max);
    const auto jz = ops::collective_spin(p.N, ops::SpinComponent::z);
    const auto jp = ops::collective_spin(p.N, ops::SpinComponent::plus);
    const auto jm = ops::collective_spin(p.N, ops::SpinComponent::minus);
    const auto id_b = ops::identity(p.n_max + 1);
    const auto id_s = ops::identity(p.N + 1);

    const double coupling = p.lambda / std::sqrt(static_cast<double>(p.N));
    OperatorMatrix H = Complex(p.omega0) * ops::tensor({id_b, jz}) +
                       Complex(p.omega) * ops::tensor({n, id_s}) +
                       Complex(coupling) * ops::tensor({a + a.adjoint(), jp + jm});
    H.data.prune(Complex(0.0));
    H.label = "H_D";
    return H;
}

namespace {

GroundState dense_ground_state(const OperatorMatrix& H, const GroundStateOptions& options)
{
    const int dim = H.dim();
    std::vector<int> keep;
    for (int k = 0; k < dim; ++k) {
        if (!options.symmetry || (*options.symmetry)[k] * options.sector > 0.0) keep.push_back(k);
    }
    if (keep.empty()) throw std::invalid_argument("ground_state: symmetry sector is empty");

    const DenseMatrix full = H.dense();
    DenseMatrix block(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t c = 0; c < keep.size(); ++c) block(r, c) = full(keep[r], keep[c]);
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block);
    if (solver.info() != Eigen::Success) throw std::runtime_error("ground_state: dense eigensolver failed");

    auto lift = [&](int col) {
        Vector v = Vector::Zero(dim);
        for (std::size_t r = 0; r < keep.size(); ++r) v[keep[r]] = solver.eigenvectors()(r, col);
        return v;
    };
    GroundState gs;
    gs.energy = solver.eigenvalues()[0];
    gs.state = lift(0);
    gs.residual = (H.data * gs.state - gs.energy * gs.state).norm();
    gs.iterations = 0;
    if (options.detect_degeneracy && block.rows() > 1 &&
        solver.eigenvalues()[1] - gs.energy < options.degeneracy_gap) {
        gs.partner_energy = solver.eigenvalues()[1];
        gs.partner_state = lift(1);
    }
    return gs;
}

} // namespace

GroundState ground_state(const OperatorMatrix& H, const GroundStateOptions& options)
{
    if (H.dim() <= options.dense_threshold) return dense_ground_state(H, options);

    LanczosOptions lanczos;
    lanczos.tol = options.tol;
    lanczos.symmetry = options.symmetry;
    lanczos.sector = options.sector;
    lanczos.start = options.start;
    const EigenPair lowest = lowest_eigenpair(H.data, lanczos);

    GroundState gs{lowest.value, lowest.vector, lowest.residual, lowest.iterations, {}, {}};
    if (options.detect_degeneracy) {
        lanczos.deflate = {lowest.vector};
        lanczos.start.reset();
        const EigenPair next = lowest_eigenpair(H.data, lanczos);
        gs.iterations += next.iterations;
        if (next.value - lowest.value < options.degeneracy_gap) {
            gs.partner_energy = next.value;
            gs.partner_state = next.vector;
        }
    }
    return gs;
}

GroundState even_ground_state(const DickeParams& p, double tol, const std::optional<Vector>& start)
{
    GroundStateOptions options;
    options.tol = tol;
    options.symmetry = ops::parity_diagonal(p.N, p.n_max);
    options.sector = 1.0;
    options.detect_degeneracy = false;
    options.start = start;
    return ground_state(dicke_hamiltonian(p), options);
}

double boson_occupation(const Vector& state, const BasisSpec& basis)
{
    basis.validate();
    if (state.size() != basis.dimension()) {
        throw std::invalid_argument("boson_occupation: state size does not match basis");
    }
    const int tq_dim = basis.include_tq ? 3 : 1;
    double weighted = 0.0;
    double norm = 0.0;
    for (int t = 0; t < tq_dim; ++t) {
        for (int n = 0; n <= basis.n_max; ++n) {
            for (int k = 0; k < basis.spin_dim(); ++k) {
                const double w = std::norm(state[basis.index(t, n, k)]);
                weighted += n * w;
                norm += w;
            }
        }
    }
    return weighted / norm;
}

double expectation(const OperatorMatrix& op, const Vector& state)
{
    return state.dot(op.data * state).real() / state.squaredNorm();
}

double critical_coupling(double omega, double omega0)
{
    if (!(omega > 0.0) || !(omega0 > 0.0)) {
        throw std::invalid_argument("critical_coupling: omega and omega0 must be > 0");
    }
    return 0.5 * std::sqrt(omega * omega0);
}

double critical_omega0(double lambda, double omega)
{
    if (!(omega > 0.0)) throw std::invalid_argument("critical_omega0: omega must be > 0");
    return 4.0 * lambda * lambda / omega;
}

ExcitationBranches excitation_branches(double omega, double omega0, double lambda)
{
    const double sum = omega * omega + omega0 * omega0;
    const double split = omega0 * omega0 - omega * omega;
    const double root = std::sqrt(split * split + 16.0 * lambda * lambda * omega * omega0);
    const double minus_sq = 0.5 * (sum - root);
    if (minus_sq < 0.0) {
        throw std::domain_error("normal-phase solution invalid: lambda exceeds lambda_c");
    }
    return {std::sqrt(minus_sq), std::sqrt(0.5 * (sum + root))};
}

NormalPhaseSolution normal_phase_occupation(double omega, double omega0, double lambda)
{
    if (!(omega > 0.0) || !(omega0 > 0.0)) {
        throw std::invalid_argument("normal_phase_occupation: omega and omega0 must be > 0");
    }
    if (lambda < 0.0 || lambda >= critical_coupling(omega, omega0)) {
        throw std::domain_error("normal-phase solution invalid: requires 0 <= lambda < lambda_c");
    }
    NormalPhaseSolution sol;
    const auto [em, ep] = excitation_branches(omega, omega0, lambda);
    sol.eps_minus = em;
    sol.eps_plus = ep;
    // atan2 keeps 2*gamma in (0, pi), continuous through resonance.
    sol.gamma_angle = 0.5 * std::atan2(4.0 * lambda * std::sqrt(omega * omega0), omega0 * omega0 - omega * omega);
    sol.c = std::cos(sol.gamma_angle);
    sol.s = std::sin(sol.gamma_angle);
    const double sc = sol.s * sol.c * (em - ep);
    sol.D = sc * sc;

    const double mixed = em * sol.s * sol.s + ep * sol.c * sol.c;
    const double product = em * ep;
    sol.occupation = (sol.D + product) / (4.0 * omega * mixed) + omega * mixed / (4.0 * product) - 0.5;

    if (sol.D > 0.0) {
        const double beta_omega = std::acosh(1.0 + 2.0 * product / sol.D);
        sol.effective_frequency = sol.D * std::sinh(beta_omega) / (2.0 * mixed);
        sol.effective_temperature = sol.effective_frequency / beta_omega;
    } else {
        sol.effective_frequency = omega;
        sol.effective_temperature = 0.0;
    }
    return sol;
}

int cutoff_convergence(const DickeParams& p, double rel_tol, const CutoffOptions& options)
{
    if (!(rel_tol > 0.0)) throw std::invalid_argument("cutoff_convergence: rel_tol must be > 0");
    if (options.start < 1 || options.step < 1) throw std::invalid_argument("cutoff_convergence: bad scan");

    auto occupation_at = [&](int n_max) {
        DickeParams q = p;
        q.n_max = n_max;
        return boson_occupation(even_ground_state(q, options.tol).state, q.basis());
    };

    int n_max = options.start;
    double current = occupation_at(n_max);
    while (true) {
        if (n_max + options.step > options.cap) {
            const double next = occupation_at(std::min(n_max + options.step, options.cap));
            throw CutoffError("cutoff_convergence: cap " + std::to_string(options.cap) + " exceeded", current, next);
        }
        const double next = occupation_at(n_max + options.step);
        if (std::abs(next - current) <= rel_tol * std::abs(next) || std::abs(next - current) < 1e-14) {
            return n_max;
        }
        n_max += options.step;
        current = next;
    }
}

} // namespace opendicke::dicke
