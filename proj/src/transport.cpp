// transport.cpp — Passive-measurement formulas and master-equation counting statistics

#include "opendicke/transport.hpp"

#include <cmath>
#include <stdexcept>

namespace opendicke::transport {

namespace {

void require_rates(const TransportQubit& tq)
{
    if (!(tq.gamma_R > 0.0)) throw std::invalid_argument("transport formula is singular for gamma_R = 0");
    if (!(tq.gamma_L > 0.0)) throw std::invalid_argument("transport formula requires gamma_L > 0");
}

// Detuning as it enters the closed forms.
double formula_detuning(const TransportQubit& tq, double occupation, Convention convention)
{
    const double e = effective_detuning(tq, occupation);
    return convention == Convention::literal ? e : 2.0 * e;
}

double tq_occupation_operator_trace(const open::DensityMatrix& rho, const OperatorMatrix& op)
{
    return rho.expectation(op);
}

} // namespace

double effective_detuning(const TransportQubit& tq, double occupation)
{
    return tq.epsilon + tq.g * occupation;
}

double passive_current(const TransportQubit& tq, double occupation, Convention convention)
{
    require_rates(tq);
    const double e = formula_detuning(tq, occupation, convention);
    const double tc2 = tq.delta * tq.delta;
    const double ratio = convention == Convention::literal ? tq.gamma_L / tq.gamma_R : tq.gamma_R / tq.gamma_L;
    return tc2 * tq.gamma_R / (tc2 * (2.0 + ratio) + 0.25 * tq.gamma_R * tq.gamma_R + e * e);
}

Noise passive_noise(const TransportQubit& tq, double occupation, Convention convention)
{
    require_rates(tq);
    const double current = passive_current(tq, occupation, convention);
    if (current == 0.0) throw std::domain_error("Fano factor undefined at zero current");
    const double e = formula_detuning(tq, occupation, convention);
    const double gl = tq.gamma_L;
    const double gr = tq.gamma_R;
    const double tc2 = tq.delta * tq.delta;
    const double numerator = 4.0 * e * e * (gr - gl) + gr * (3.0 * gl * gr + gr * gr + 8.0 * tc2);
    const double denominator = 4.0 * tc2 * (2.0 * gl + gr) + gl * gr * gr + 4.0 * e * e * gl;
    const double fano = 1.0 - 8.0 * gl * tc2 * numerator / (denominator * denominator);
    return {2.0 * current * fano, fano};
}

TransportResult passive_transport(const TransportQubit& tq, double occupation, Convention convention)
{
    const double current = passive_current(tq, occupation, convention);
    const Noise noise = passive_noise(tq, occupation, convention);
    return {current, noise.S0, noise.fano, effective_detuning(tq, occupation)};
}

double me_current(const open::DensityMatrix& rho_ss, double gamma_R)
{
    if (!rho_ss.basis.include_tq) throw std::invalid_argument("me_current: basis has no transport qubit");
    const auto tq = ops::tq_operators();
    const OperatorMatrix occupied_R = ops::embed_tq(tq.s_R.adjoint() * tq.s_R, rho_ss.basis);
    return gamma_R * tq_occupation_operator_trace(rho_ss, occupied_R);
}

double me_noise_zero_freq(const open::SteadyStateSolver& solver, double gamma_R)
{
    const open::DensityMatrix& rho = solver.steady_state();
    if (!rho.basis.include_tq) throw std::invalid_argument("me_noise_zero_freq: basis has no transport qubit");
    const auto tq = ops::tq_operators();
    const OperatorMatrix s_R = ops::embed_tq(tq.s_R, rho.basis);
    const OperatorMatrix occupied_R = ops::embed_tq(tq.s_R.adjoint() * tq.s_R, rho.basis);
    const int d = static_cast<int>(rho.data.rows());

    const DenseMatrix jumped = s_R.data * rho.data * s_R.data.adjoint();
    const Vector resolved = solver.apply_pseudoinverse(open::vectorize(jumped));
    const DenseMatrix resolved_op = open::unvectorize(resolved, d);
    const double correlation = (occupied_R.data * resolved_op).trace().real();
    const double current = me_current(rho, gamma_R);
    return 2.0 * (current - 2.0 * gamma_R * gamma_R * correlation);
}

double me_noise_zero_freq(const open::LiouvillianMatrix& L, const open::DensityMatrix& rho_ss, double gamma_R)
{
    if (!rho_ss.basis.include_tq) throw std::invalid_argument("me_noise_zero_freq: basis has no transport qubit");
    const auto tq = ops::tq_operators();
    const OperatorMatrix s_R = ops::embed_tq(tq.s_R, rho_ss.basis);
    const OperatorMatrix occupied_R = ops::embed_tq(tq.s_R.adjoint() * tq.s_R, rho_ss.basis);
    const int d = static_cast<int>(rho_ss.data.rows());

    const DenseMatrix jumped = s_R.data * rho_ss.data * s_R.data.adjoint();
    const Vector resolved = open::pseudoinverse_apply(L, rho_ss, open::vectorize(jumped));
    const double correlation = (occupied_R.data * open::unvectorize(resolved, d)).trace().real();
    return 2.0 * (me_current(rho_ss, gamma_R) - 2.0 * gamma_R * gamma_R * correlation);
}

double trace_preservation_error(const open::LiouvillianMatrix& L)
{
    const Vector tr = open::trace_functional(L.hilbert_dim);
    const Vector left = L.data.transpose() * tr;
    return left.norm() / std::max(1.0, max_norm(L.data));
}

MasterEquationPoint me_transport(const open::SystemSpec& spec, bool with_noise)
{
    if (!spec.include_tq) throw std::invalid_argument("me_transport: spec has no transport qubit");
    const open::LiouvillianMatrix L = open::build_liouvillian(spec);
    const open::SteadyStateSolver solver(L, spec.tolerances);
    const open::DensityMatrix& rho = solver.steady_state();

    MasterEquationPoint point;
    point.occupation = rho.expectation(ops::embed_dicke_operators(spec.basis()).number);
    point.transport.current = me_current(rho, spec.gamma_R);
    point.transport.effective_detuning = spec.epsilon + spec.g * point.occupation;
    if (with_noise) {
        point.transport.noise_zero_freq = me_noise_zero_freq(solver, spec.gamma_R);
        if (point.transport.current == 0.0) throw std::domain_error("Fano factor undefined at zero current");
        point.transport.fano = point.transport.noise_zero_freq / (2.0 * point.transport.current);
    }
    point.min_eigenvalue = rho.min_eigenvalue();
    point.trace_preservation = trace_preservation_error(L);
    return point;
}

CavityPoint me_cavity_occupation(const open::SystemSpec& spec)
{
    open::SystemSpec cavity = spec;
    cavity.include_tq = false;
    const open::LiouvillianMatrix L = open::build_liouvillian(cavity);
    const open::DensityMatrix rho = open::steady_state(L, cavity.tolerances);
    return {rho.expectation(ops::embed_dicke_operators(cavity.basis()).number), rho.min_eigenvalue(),
            trace_preservation_error(L)};
}

} // namespace opendicke::transport
