// dicke.hpp — Dicke Hamiltonian, finite-N ground states and the large-N normal phase

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "opendicke/operators.hpp"

namespace opendicke::dicke {

struct DickeParams {
    double omega{1.0};   // boson frequency
    double omega0{1.0};  // qubit splitting
    double lambda{0.0};  // qubit-field coupling
    int N{1};
    int n_max{1};

    void validate() const;
    BasisSpec basis() const { return {n_max, N, false}; }
    bool operator==(const DickeParams&) const = default;
};

// H = omega0 Jz + omega a^dag a + (lambda / sqrt N)(a^dag + a)(J+ + J-)
// on boson (x) spin.
OperatorMatrix dicke_hamiltonian(const DickeParams& p);

struct GroundStateOptions {
    double tol{1e-10};
    // Below this Hilbert dimension a dense eigensolver is used.
    int dense_threshold{400};
    // Optional conserved +-1 diagonal symmetry; restricts to `sector`.
    std::optional<Eigen::VectorXd> symmetry;
    double sector{1.0};
    // Look for a second state within `degeneracy_gap` of the lowest one.
    bool detect_degeneracy{true};
    double degeneracy_gap{1e-8};
    // Lanczos start vector, e.g. the ground state at a neighbouring coupling.
    std::optional<Vector> start;
};

struct GroundState {
    double energy{0.0};
    Vector state;
    double residual{0.0};
    int iterations{0};
    // Present when the next state lies within the degeneracy gap.
    std::optional<double> partner_energy;
    std::optional<Vector> partner_state;
};

GroundState ground_state(const OperatorMatrix& H, const GroundStateOptions& options = {});

// Lowest state of the even-parity sector, which is the ground state for
// lambda < lambda_c and one member of the ground doublet above it.
GroundState even_ground_state(const DickeParams& p, double tol = 1e-10,
                              const std::optional<Vector>& start = std::nullopt);

double boson_occupation(const Vector& state, const BasisSpec& basis);
double expectation(const OperatorMatrix& op, const Vector& state);

double critical_coupling(double omega, double omega0);
// omega0 at which lambda becomes critical: 4 lambda^2 / omega.
double critical_omega0(double lambda, double omega);

struct ExcitationBranches {
    double eps_minus;
    double eps_plus;
};
ExcitationBranches excitation_branches(double omega, double omega0, double lambda);

struct NormalPhaseSolution {
    double eps_minus{0.0};
    double eps_plus{0.0};
    double gamma_angle{0.0}; // in (0, pi/2); pi/4 on resonance
    double c{1.0};
    double s{0.0};
    double D{0.0};           // [s c (eps_minus - eps_plus)]^2
    double occupation{0.0};  // <a^dag a>
    // Effective thermal oscillator (m = 1). Zero temperature at lambda = 0.
    double effective_temperature{0.0};
    double effective_frequency{0.0};
};
NormalPhaseSolution normal_phase_occupation(double omega, double omega0, double lambda);

class CutoffError : public std::runtime_error {
public:
    CutoffError(const std::string& what, double previous, double last)
        : std::runtime_error(what), previous_(previous), last_(last) {}
    double previous_estimate() const { return previous_; }
    double last_estimate() const { return last_; }

private:
    double previous_;
    double last_;
};

struct CutoffOptions {
    int start{1};
    int step{10};
    int cap{400};
    double tol{1e-10}; // eigensolver residual
};

// Smallest n_max (scanned in `step` increments from `start`) whose even ground
// state occupation moves by less than rel_tol when n_max grows by `step`.
int cutoff_convergence(const DickeParams& p, double rel_tol, const CutoffOptions& options = {});

} // namespace opendicke::dicke
