#include "passage/model.hpp"

#include <stdexcept>

namespace passage {

UnitSystem::UnitSystem(double ref) : reference_frequency(ref) {
    if (!(ref > 0.0))
        throw std::invalid_argument("UnitSystem: reference_frequency must be > 0");
}

TwoLevelParams::TwoLevelParams(double rabi_, double detuning_)
    : rabi(rabi_), detuning(detuning_) {
    if (rabi < 0.0)
        throw std::invalid_argument("TwoLevelParams: rabi must be >= 0");
}

LevelScheme::LevelScheme(SchemeKind kind_, double e1_, double e2_, double e3_,
                         double omega_p_, double omega_s_)
    : kind(kind_), e1(e1_), e2(e2_), e3(e3_), omega_p(omega_p_), omega_s(omega_s_) {
    if (!(omega_p > 0.0) || !(omega_s > 0.0))
        throw std::invalid_argument("LevelScheme: carrier frequencies must be > 0");
}

ThreeLevelParams::ThreeLevelParams(double delta_p_, double delta_s_,
                                   double rabi_p_, double rabi_s_)
    : delta_p(delta_p_), delta_s(delta_s_), rabi_p(rabi_p_), rabi_s(rabi_s_) {
    if (rabi_p < 0.0 || rabi_s < 0.0)
        throw std::invalid_argument("ThreeLevelParams: Rabi frequencies must be >= 0");
}

Detunings detunings_from_scheme(const LevelScheme& s) {
    Detunings d;
    switch (s.kind) {
        case SchemeKind::Lambda:
            d.delta_p = s.e2 - s.e1 - s.omega_p;
            d.delta_s = s.e2 - s.e3 - s.omega_s;
            break;
        case SchemeKind::Ladder:
            d.delta_p = s.e2 - s.e1 - s.omega_p;
            d.delta_s = s.e2 - s.e3 + s.omega_s;
            break;
        case SchemeKind::Vee:
            d.delta_p = s.e2 - s.e1 + s.omega_p;
            d.delta_s = s.e2 - s.e3 + s.omega_s;
            break;
    }
    d.two_photon = d.delta_p - d.delta_s;
    return d;
}

Eigen::Matrix2d h2(const TwoLevelParams& p) {
    Eigen::Matrix2d h;
    h(0, 0) = 0.0;
    h(0, 1) = 0.5 * p.rabi;
    h(1, 0) = 0.5 * p.rabi;
    h(1, 1) = p.detuning;
    return h;
}

Eigen::Matrix3d h3(const ThreeLevelParams& p) {
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 1) = 0.5 * p.rabi_p;
    h(1, 0) = 0.5 * p.rabi_p;
    h(1, 1) = p.delta_p;
    h(1, 2) = 0.5 * p.rabi_s;
    h(2, 1) = 0.5 * p.rabi_s;
    h(2, 2) = p.delta_p - p.delta_s;
    return h;
}

double effective_detuning(double t, double static_detuning,
                          const std::function<double(double)>& stark_shift) {
    return static_detuning + stark_shift(t);
}

int initial_state_for(SchemeKind kind) {
    return kind == SchemeKind::Vee ? 2 : 1;
}

}  // namespace passage
