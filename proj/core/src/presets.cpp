#include "passage/presets.hpp"

namespace passage::presets {

Protocol landau_zener(double omega, double alpha, double delta_max) {
    const double half = delta_max / alpha;
    const TimeSpan span{-half, half};
    // A pump filling the span keeps the coupling at its peak through the
    // crossing but switches off smoothly at the ends, so the final
    // populations are free of the finite-window ringing a hard-edged
    // coupling leaves behind.
    const Envelope pump{Shape::SineSquared, omega, 0.0, 2.0 * half};
    return chirp_schedule(ProtocolKind::DirectChirp, -delta_max, pump, {}, alpha,
                          span);
}

Protocol direct_chirp_a() {
    const Envelope pump{Shape::SineSquared, 1.0, 0.0, 400.0};
    return chirp_schedule(ProtocolKind::DirectChirp, -1.0, pump, {}, 0.01);
}

// The 0.3 tau center offset places the driven resonance crossing near the
// pump maximum (the mute one stays clear of the pump support), which keeps
// the adiabaticity margin per unit length high enough to pass 100 on a
// span short enough for the norm-drift budget.
Protocol scrap_b(double tau) {
    const Envelope stark{Shape::SineSquared, 2.0, 0.5 * tau, tau};
    const Envelope pump{Shape::SineSquared, 5.0, 0.5 * tau + 0.3 * tau, tau};
    return chirp_schedule(ProtocolKind::ScrapB, -1.0, pump, stark, 0.0);
}

Protocol scrap_c(double tau) {
    const Envelope pump{Shape::SineSquared, 5.0, 0.5 * tau, tau};
    const Envelope stark{Shape::SineSquared, 2.0, 0.5 * tau + 0.3 * tau, tau};
    return chirp_schedule(ProtocolKind::ScrapC, -1.0, pump, stark, 0.0);
}

Protocol stirap_resonant(PulseOrder sequence, double area) {
    const double peak = 5.0;
    const double tau = area / peak;
    return stirap_schedule(sequence, tau, 0.5 * tau, peak, peak, 0.0, 0.0);
}

Protocol stirap_case213(PulseOrder sequence, double area) {
    const double peak = 5.0;
    const double tau = area / peak;
    return stirap_schedule(sequence, tau, 0.5 * tau, peak, peak, -0.5, -1.5);
}

Protocol stirap_case123(PulseOrder sequence, double area) {
    const double peak = 5.0;
    const double tau = area / peak;
    return stirap_schedule(sequence, tau, 0.5 * tau, peak, peak, 0.5, -0.5);
}

Protocol stirap_weak_pump_123(double tau_stokes) {
    const Envelope stokes{Shape::SineSquared, 5.0, 0.5 * tau_stokes, tau_stokes};
    const Envelope pump{Shape::SineSquared, 1.0, 1.5 * tau_stokes, 2.5 * tau_stokes};
    return make_stirap(pump, stokes, 0.5, -0.5);
}

SweepSpec fig7_sweep(PulseOrder sequence, double area, int n) {
    SweepSpec spec;
    spec.delta_p_axis = default_detuning_axis(n);
    spec.delta_s_axis = default_detuning_axis(n);
    spec.sequence = sequence;
    spec.peak_p = 1.0;
    spec.peak_s = 1.0;
    spec.tau = area;
    spec.delay = 0.5 * spec.tau;
    spec.initial_state = 1;
    return spec;
}

}  // namespace passage::presets
