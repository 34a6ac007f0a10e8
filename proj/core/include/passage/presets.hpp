// presets.hpp - ready-made protocols and sweep specifications used by the
// CLI, the test suites, and the documentation examples. Two-level presets
// are normalized to |delta_in| = 1, three-level presets to a two-photon
// detuning of 1 (where nonzero).

#pragma once

#include "passage/sweep.hpp"

namespace passage::presets {

// Constant coupling (flat-top Gaussian pump) under a linear chirp covering
// |Delta| <= delta_max; final P2 approaches the Landau-Zener formula.
Protocol landau_zener(double omega = 1.0, double alpha = 1.0,
                      double delta_max = 50.0);

// Direct chirp through resonance with an enveloped pump (path (a)).
Protocol direct_chirp_a();

// Stark-chirped passage, Stark pulse first, pump after the mute crossing
// and outlasting the Stark pulse (path (b)). The default length puts the
// adiabaticity margin above 100.
Protocol scrap_b(double tau = 1200.0);

// Stark-chirped passage, pump first, Stark pulse off after the pump
// (path (c)).
Protocol scrap_c(double tau = 1200.0);

// Resonant STIRAP: equal sine-squared pulses, delay tau/2, pulse area
// omega_max * tau as given.
Protocol stirap_resonant(PulseOrder sequence = PulseOrder::Counterintuitive,
                         double area = 500.0);

// Case 213: Dp = -1/2, Ds = -3/2 (two-photon detuning 1); the pump-edge
// crossing sits at sqrt(6) and the peaks reach well past it.
Protocol stirap_case213(PulseOrder sequence, double area = 500.0);

// Case 123: Dp = 1/2, Ds = -1/2; both edge crossings sit at sqrt(2).
Protocol stirap_case123(PulseOrder sequence, double area = 500.0);

// Case 123 with a longer, weaker pump whose peak stays below the pump-edge
// crossing; counterintuitive order. The pump lasts 2.5x the Stokes length.
Protocol stirap_weak_pump_123(double tau_stokes = 500.0);

// Efficiency-map window reproducing the published transfer maps:
// axes [-1.2, 1.2] omega_max, equal peaks, delay tau/2.
SweepSpec fig7_sweep(PulseOrder sequence, double area = 100.0, int n = 41);

}  // namespace passage::presets
