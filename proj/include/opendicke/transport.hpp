// transport.hpp — Current and zero-frequency noise through the transport qubit

#pragma once

#include "opendicke/open_system.hpp"

namespace opendicke::transport {

struct TransportQubit {
    double epsilon{0.0};
    double delta{0.1}; // T_c
    double gamma_L{0.1};
    double gamma_R{0.1};
    double g{0.1};

    static TransportQubit from(const open::SystemSpec& spec)
    {
        return {spec.epsilon, spec.delta, spec.gamma_L, spec.gamma_R, spec.g};
    }
};

// literal: the closed forms as written,
//   I/e = Tc^2 GR / [Tc^2 (2 + GL/GR) + GR^2/4 + e^2],
//   S(0) = 2eI [1 - 8 GL Tc^2 (4 e^2 (GR - GL) + GR (3 GL GR + GR^2 + 8 Tc^2))
//                   / (4 Tc^2 (2 GL + GR) + GL GR^2 + 4 e^2 GL)^2],
//   with e = epsilon + g <a^dag a>.
// reconciled: the same expressions with the detuning of H_TQ = e sigma_z
//   (2e between |L> and |R>) and GR/GL in the current's denominator. This
//   form agrees with the three-state master equation for all rates.
enum class Convention { literal, reconciled };

struct TransportResult {
    double current{0.0};          // I/e
    double noise_zero_freq{0.0};  // S(0), e = 1
    double fano{0.0};             // S(0) / 2eI
    double effective_detuning{0.0};
};

double effective_detuning(const TransportQubit& tq, double occupation);
double passive_current(const TransportQubit& tq, double occupation, Convention convention = Convention::literal);

struct Noise {
    double S0;
    double fano;
};
Noise passive_noise(const TransportQubit& tq, double occupation, Convention convention = Convention::literal);

TransportResult passive_transport(const TransportQubit& tq, double occupation,
                                  Convention convention = Convention::literal);

// Gamma_R Tr[s_R^dag s_R rho].
double me_current(const open::DensityMatrix& rho_ss, double gamma_R);

// S(0) = 2 [I - 2 Gamma_R^2 Re Tr(P_R R(s_R rho s_R^dag))], R the projected
// pseudoinverse of L and P_R = s_R^dag s_R.
double me_noise_zero_freq(const open::SteadyStateSolver& solver, double gamma_R);
double me_noise_zero_freq(const open::LiouvillianMatrix& L, const open::DensityMatrix& rho_ss, double gamma_R);

struct MasterEquationPoint {
    TransportResult transport;
    double occupation{0.0};
    double min_eigenvalue{0.0};
    double trace_preservation{0.0}; // ||vec(I)^T L|| / ||L||_max
};

// Full master-equation solve of `spec` (TQ required).
MasterEquationPoint me_transport(const open::SystemSpec& spec, bool with_noise = true);

// Occupation from the master equation without the TQ (cavity loss only).
struct CavityPoint {
    double occupation{0.0};
    double min_eigenvalue{0.0};
    double trace_preservation{0.0};
};
CavityPoint me_cavity_occupation(const open::SystemSpec& spec);

double trace_preservation_error(const open::LiouvillianMatrix& L);

} // namespace opendicke::transport
