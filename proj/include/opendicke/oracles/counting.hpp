// counting.hpp — Independent reference values for the transport qubit and the normal phase

#pragma once

namespace opendicke::oracles {

struct Cumulants {
    double current;  // first cumulant rate
    double variance; // second cumulant rate; S(0) = 2 * variance
    double fano() const { return variance / current; }
};

// Three-state qubit with H = eps sz + delta sx, Gamma_L feeding |L> from |0>
// and Gamma_R emptying |R>. Cumulants of the charge leaving through Gamma_R
// from the characteristic polynomial of the counting-field Bloch matrix.
Cumulants three_state_cumulants(double epsilon, double delta, double gamma_L, double gamma_R);

// Empty/occupied sequential tunneling with rates gamma_in and gamma_out.
Cumulants two_state_cumulants(double gamma_in, double gamma_out);

// <a^dag a> in the ground state of the quadratic two-mode Hamiltonian
// omega a^dag a + omega0 b^dag b + lambda (a + a^dag)(b + b^dag).
double two_mode_occupation(double omega, double omega0, double lambda);

} // namespace opendicke::oracles
