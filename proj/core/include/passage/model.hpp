// model.hpp - physical parameter types and effective RWA Hamiltonians
// for driven two- and three-level systems (hbar = 1, all quantities
// dimensionless in units of a caller-chosen reference frequency).

#pragma once

#include <Eigen/Core>
#include <functional>

namespace passage {

// Normalization unit. Every frequency-like quantity downstream is a
// dimensionless multiple of reference_frequency; times are multiples of
// its inverse.
struct UnitSystem {
    double reference_frequency = 1.0;

    explicit UnitSystem(double ref = 1.0);
};

// Two-level system: effective Rabi frequency and pre-summed effective
// detuning (static detuning plus Stark shift).
struct TwoLevelParams {
    double rabi = 0.0;      // Omega >= 0; laser phase absorbed into the basis
    double detuning = 0.0;  // Delta

    TwoLevelParams(double rabi, double detuning);
};

enum class SchemeKind { Lambda, Ladder, Vee };

// Bare three-level linkage: energies plus the two carrier frequencies.
// The kind fixes the sign conventions mapping (E, omega) to detunings.
struct LevelScheme {
    SchemeKind kind = SchemeKind::Lambda;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;  // bare energies
    double omega_p = 0.0;                  // pump carrier frequency, > 0
    double omega_s = 0.0;                  // Stokes carrier frequency, > 0

    LevelScheme(SchemeKind kind, double e1, double e2, double e3,
                double omega_p, double omega_s);
};

// Effective three-level parameters. The two-photon detuning is always
// derived as delta_p - delta_s, never stored.
struct ThreeLevelParams {
    double delta_p = 0.0;
    double delta_s = 0.0;
    double rabi_p = 0.0;  // Omega_P >= 0
    double rabi_s = 0.0;  // Omega_S >= 0

    ThreeLevelParams(double delta_p, double delta_s, double rabi_p, double rabi_s);

    double two_photon_detuning() const { return delta_p - delta_s; }
};

struct Detunings {
    double delta_p = 0.0;
    double delta_s = 0.0;
    double two_photon = 0.0;  // always delta_p - delta_s
};

// Scheme-specific one-photon detunings:
//   Lambda: Dp = E2-E1-wP, Ds = E2-E3-wS
//   ladder: Dp = E2-E1-wP, Ds = E2-E3+wS
//   V:      Dp = E2-E1+wP, Ds = E2-E3+wS
Detunings detunings_from_scheme(const LevelScheme& scheme);

// H = 1/2 [[0, Omega], [Omega, 2 Delta]]; element (0,0) is exactly zero.
Eigen::Matrix2d h2(const TwoLevelParams& p);

// H = 1/2 [[0, Wp, 0], [Wp, 2 Dp, Ws], [0, Ws, 2 (Dp - Ds)]];
// the (0,2)/(2,0) corners are exactly zero (no 1-3 dipole coupling).
Eigen::Matrix3d h3(const ThreeLevelParams& p);

// Delta(t) = Delta0 + S(t). For SCRAP the static part is time independent
// and all time dependence enters through the Stark shift.
double effective_detuning(double t, double static_detuning,
                          const std::function<double(double)>& stark_shift);

// Default initial level per linkage: |1> for Lambda/ladder, |2> for V.
int initial_state_for(SchemeKind kind);

}  // namespace passage
