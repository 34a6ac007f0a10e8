// propagator.hpp - time-dependent Schroedinger integration for a protocol,
// population and adiabaticity diagnostics, and the analytic Landau-Zener
// oracle used for verification.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "passage/pulses.hpp"
#include "passage/spectrum.hpp"

namespace passage {

using Amplitudes = Eigen::VectorXcd;

struct PropagationResult {
    std::vector<double> times;            // evenly spaced, includes endpoints
    std::vector<Amplitudes> states;       // one per sample
    std::vector<Eigen::VectorXd> populations;
    double adiabaticity_margin = 0.0;     // min gap/coupling along the protocol
    double norm_drift = 0.0;              // max |  |psi|^2 - 1 | over samples
    long long steps = 0;                  // accepted integrator steps

    const Eigen::VectorXd& final_populations() const { return populations.back(); }
};

struct PropagateOptions {
    double tol = 1e-10;      // local error per unit time
    int samples = 1024;      // recorded output samples (>= 2)
    bool with_margin = true; // also evaluate the adiabaticity margin
};

// Solves i dpsi/dt = H(t) psi over the protocol span with an adaptive
// embedded Dormand-Prince 5(4) pair; the norm is never renormalized so
// norm_drift stays an honest quality metric. psi0 must be normalized and
// sized to the protocol's level count. Throws StepUnderflowError when the
// controller drives the step below 1e-12 of the span.
PropagationResult propagate(const Protocol& protocol, const Amplitudes& psi0,
                            const PropagateOptions& opts = {});

// Convenience: start from the basis state |level> (1-based).
PropagationResult propagate(const Protocol& protocol, int level,
                            const PropagateOptions& opts = {});

// Generic two/three-level propagation from an explicit Hamiltonian
// supplier (used by oracles and tests).
PropagationResult propagate_hamiltonian(
    const std::function<Eigen::MatrixXd(double)>& hamiltonian, TimeSpan span,
    const Amplitudes& psi0, const PropagateOptions& opts = {});

// Two-level adiabaticity margin: min over the span of
// sqrt(Omega^2 + Delta^2) / |dTheta/dt| with
// dTheta/dt = (dOmega Delta - Omega dDelta) / (2 (Omega^2 + Delta^2)).
// Returns +inf when the mixing angle never moves. Derivatives are central
// differences with step span/2^16. Interior points with
// Omega^2 + Delta^2 == 0 are reported via std::domain_error.
double adiabaticity_margin_2(const std::function<double(double)>& omega,
                             const std::function<double(double)>& delta,
                             TimeSpan span);

// Three-level generalization: min over adjacent eigenvalue pairs of
// gap / |<v_i | d v_{i+1}/dt>| with continuity-tracked eigenvectors.
// Pairs with vanishing coupling (e.g. at mute crossings) do not count;
// +inf for constant Hamiltonians.
double adiabaticity_margin_3(const Protocol& protocol);

// Margin for whichever kind the protocol is.
double adiabaticity_margin(const Protocol& protocol);

// Transfer probability 1 - exp(-pi Omega^2 / (2 alpha)) for a constant
// coupling under a linear chirp of rate alpha.
double landau_zener_oracle(double omega, double alpha);

// Uniformly sampled (Omega_P, Omega_S) trace of a three-level protocol,
// suitable for track_path.
ParameterPath protocol_parameter_path(const Protocol& protocol, int n_samples = 2049);

}  // namespace passage
