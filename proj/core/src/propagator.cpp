#include "passage/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "passage/errors.hpp"

namespace passage {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

template <typename Vec>
double rms_norm(const Vec& v) {
    return std::sqrt(v.squaredNorm() / static_cast<double>(v.size()));
}

// Adaptive embedded RK 5(4), FSAL, error controlled per unit time; steps
// are clipped to the evenly spaced output times.
template <typename Vec, typename Rhs>
PropagationResult run_dopri5(Rhs&& rhs, TimeSpan span, Vec y,
                             const PropagateOptions& opts) {
    const double length = span.length();
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("propagate: span must be finite with end > start");
    const int samples = std::max(opts.samples, 2);
    const double h_min = 1e-12 * length;

    PropagationResult res;
    res.times.reserve(samples);
    res.states.reserve(samples);
    res.populations.reserve(samples);

    auto record = [&](double t, const Vec& state) {
        res.times.push_back(t);
        res.states.push_back(state);
        res.populations.push_back(state.cwiseAbs2());
        res.norm_drift =
            std::max(res.norm_drift, std::abs(state.squaredNorm() - 1.0));
    };

    Vec k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
    Vec ytmp = y, y5 = y, errv = y;

    double t = span.start;
    rhs(t, y, k1);
    record(t, y);

    double h_ctrl = length * 1e-5;

    for (int s = 1; s < samples; ++s) {
        const double target =
            span.start + length * static_cast<double>(s) / (samples - 1);
        while (t < target) {
            if (h_ctrl < h_min)
                throw StepUnderflowError(
                    "propagate: step size underflow (stiff or invalid inputs)");
            const bool clipped = h_ctrl >= target - t;
            const double h = clipped ? target - t : h_ctrl;

            // k1 always holds f(t, y): set initially, maintained by FSAL
            ytmp = y + h * (a21 * k1);
            rhs(t + c2 * h, ytmp, k2);
            ytmp = y + h * (a31 * k1 + a32 * k2);
            rhs(t + c3 * h, ytmp, k3);
            ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
            rhs(t + c4 * h, ytmp, k4);
            ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            rhs(t + c5 * h, ytmp, k5);
            ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            rhs(t + h, ytmp, k6);
            y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            rhs(t + h, y5, k7);
            errv = e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7;
            const double err_per_time = rms_norm(errv);

            double factor;
            if (err_per_time == 0.0) {
                factor = 5.0;
            } else if (!std::isfinite(err_per_time)) {
                factor = 0.2;
            } else {
                // aim below the acceptance threshold; the headroom keeps the
                // secular norm drift well under the per-run budget
                factor = 0.9 * std::pow(0.5 * opts.tol / err_per_time, 0.25);
                factor = std::clamp(factor, 0.2, 5.0);
            }

            if (err_per_time <= opts.tol) {
                t = clipped ? target : t + h;
                y.swap(y5);
                k1.swap(k7);
                ++res.steps;
                h_ctrl = h * factor;
            } else {
                h_ctrl = h * std::min(factor, 0.9);
            }
        }
        record(t, y);
    }
    return res;
}

struct MarginScan {
    int points = 4096;   // uniform interior scan
    int diff_exp = 16;   // central-difference step = span / 2^16
};

}  // namespace

PropagationResult propagate(const Protocol& proto, const Amplitudes& psi0,
                            const PropagateOptions& opts) {
    const int n = proto.levels();
    if (psi0.size() != n)
        throw std::invalid_argument("propagate: psi0 size does not match protocol");
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate: psi0 must be normalized");

    PropagationResult res;
    if (n == 2) {
        using Vec2 = Eigen::Vector2cd;
        const double d0 = proto.static_detuning;
        auto rhs = [&proto, d0](double t, const Vec2& y, Vec2& f) {
            const double hw = 0.5 * proto.pump.value(t);
            const double d = proto.kind == ProtocolKind::DirectChirp
                                 ? std::clamp(proto.chirp_rate * (t - proto.pump.center),
                                              d0, -d0)
                                 : d0 + proto.stokes_or_stark.value(t);
            f(0) = -kI * (hw * y(1));
            f(1) = -kI * (hw * y(0) + d * y(1));
        };
        res = run_dopri5(rhs, proto.span, Vec2(psi0), opts);
    } else {
        using Vec3 = Eigen::Vector3cd;
        const double dp = proto.delta_p;
        const double dd = proto.delta_p - proto.delta_s;
        auto rhs = [&proto, dp, dd](double t, const Vec3& y, Vec3& f) {
            const double hp = 0.5 * proto.pump.value(t);
            const double hs = 0.5 * proto.stokes_or_stark.value(t);
            f(0) = -kI * (hp * y(1));
            f(1) = -kI * (hp * y(0) + dp * y(1) + hs * y(2));
            f(2) = -kI * (hs * y(1) + dd * y(2));
        };
        res = run_dopri5(rhs, proto.span, Vec3(psi0), opts);
    }
    res.adiabaticity_margin =
        opts.with_margin ? adiabaticity_margin(proto)
                         : std::numeric_limits<double>::quiet_NaN();
    return res;
}

PropagationResult propagate(const Protocol& proto, int level,
                            const PropagateOptions& opts) {
    const int n = proto.levels();
    if (level < 1 || level > n)
        throw std::invalid_argument("propagate: initial level out of range");
    Amplitudes psi0 = Amplitudes::Zero(n);
    psi0(level - 1) = 1.0;
    return propagate(proto, psi0, opts);
}

PropagationResult propagate_hamiltonian(
    const std::function<Eigen::MatrixXd(double)>& hamiltonian, TimeSpan span,
    const Amplitudes& psi0, const PropagateOptions& opts) {
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate: psi0 must be normalized");
    auto rhs = [&hamiltonian](double t, const Amplitudes& y, Amplitudes& f) {
        f = -kI * (hamiltonian(t) * y);
    };
    PropagationResult res = run_dopri5(rhs, span, psi0, opts);
    res.adiabaticity_margin = std::numeric_limits<double>::quiet_NaN();
    return res;
}

double adiabaticity_margin_2(const std::function<double(double)>& omega,
                             const std::function<double(double)>& delta,
                             TimeSpan span) {
    const MarginScan scan;
    const double length = span.length();
    if (!(length > 0.0))
        throw std::invalid_argument("adiabaticity_margin_2: empty span");
    const double h = length / std::pow(2.0, scan.diff_exp);

    double margin = kInf;
    for (int i = 0; i <= scan.points; ++i) {
        const double t = span.start + h +
                         (length - 2.0 * h) * static_cast<double>(i) / scan.points;
        const double w = omega(t);
        const double d = delta(t);
        const double g2 = w * w + d * d;
        if (g2 == 0.0) {
            std::ostringstream msg;
            msg << "adiabaticity_margin_2: Omega^2 + Delta^2 vanishes at t = " << t;
            throw std::domain_error(msg.str());
        }
        const double dw = (omega(t + h) - omega(t - h)) / (2.0 * h);
        const double dd = (delta(t + h) - delta(t - h)) / (2.0 * h);
        const double theta_dot = (dw * d - w * dd) / (2.0 * g2);
        if (theta_dot == 0.0) continue;
        margin = std::min(margin, std::sqrt(g2) / std::abs(theta_dot));
    }
    return margin;
}

double adiabaticity_margin_3(const Protocol& proto) {
    if (proto.kind != ProtocolKind::Stirap)
        throw std::invalid_argument("adiabaticity_margin_3: three-level protocols only");
    const MarginScan scan;
    const double length = proto.span.length();
    const double h = length / std::pow(2.0, scan.diff_exp);

    // Declared mute crossings: true degeneracies there are expected.
    std::vector<CrossingPoint> declared;
    if (classify_case(proto.delta_p, proto.delta_s) != TopologyCase::Degenerate)
        declared = conical_intersections(proto.delta_p, proto.delta_s);

    double margin = kInf;
    for (int i = 0; i <= scan.points; ++i) {
        const double t = proto.span.start + h +
                         (length - 2.0 * h) * static_cast<double>(i) / scan.points;
        const double wp = proto.omega_p(t);
        const double ws = proto.omega_s(t);
        const EigenSystem es =
            eigen3_numeric({proto.delta_p, proto.delta_s, wp, ws});
        // dH/dt has only the two Rabi couplings; eigenvector velocities
        // follow from <v_i| dH/dt |v_j> / gap, which stays clean through
        // mute crossings where the direct finite difference degenerates.
        const double cp = (proto.omega_p(t + h) - proto.omega_p(t - h)) / (4.0 * h);
        const double cs = (proto.omega_s(t + h) - proto.omega_s(t - h)) / (4.0 * h);
        const double hscale = std::max(
            1.0, h3({proto.delta_p, proto.delta_s, wp, ws}).cwiseAbs().maxCoeff());
        for (int pair = 0; pair < 2; ++pair) {
            const Eigen::Vector3d& a = es.vectors.col(pair);
            const Eigen::Vector3d& b = es.vectors.col(pair + 1);
            const double matelem = std::abs(cp * (a(0) * b(1) + a(1) * b(0)) +
                                            cs * (a(1) * b(2) + a(2) * b(1)));
            // below the roundoff floor of the bracket the pair is uncoupled
            // (mute crossings, proportional pulses)
            if (matelem <= 1e-14 * (std::abs(cp) + std::abs(cs))) continue;
            const double gap = es.values(pair + 1) - es.values(pair);
            if (gap < 1e-12 * hscale) {
                const bool near_declared = std::any_of(
                    declared.begin(), declared.end(), [&](const CrossingPoint& c) {
                        return std::hypot(wp - c.omega_p, ws - c.omega_s) <
                               1e-6 * hscale;
                    });
                if (near_declared) continue;
                throw DegenerateError(
                    "adiabaticity_margin_3: interacting degeneracy away from a "
                    "mute crossing");
            }
            margin = std::min(margin, gap * gap / matelem);
        }
    }
    return margin;
}

double adiabaticity_margin(const Protocol& proto) {
    if (proto.kind == ProtocolKind::Stirap) return adiabaticity_margin_3(proto);
    return adiabaticity_margin_2([&proto](double t) { return proto.omega(t); },
                                 [&proto](double t) { return proto.detuning(t); },
                                 proto.span);
}

double landau_zener_oracle(double omega, double alpha) {
    if (omega < 0.0 || !(alpha > 0.0))
        throw std::invalid_argument("landau_zener_oracle: need Omega >= 0, alpha > 0");
    return 1.0 - std::exp(-std::numbers::pi * omega * omega / (2.0 * alpha));
}

ParameterPath protocol_parameter_path(const Protocol& proto, int n_samples) {
    if (proto.kind != ProtocolKind::Stirap)
        throw std::invalid_argument("protocol_parameter_path: three-level protocols only");
    if (n_samples < 2)
        throw std::invalid_argument("protocol_parameter_path: need at least 2 samples");
    ParameterPath path;
    path.samples.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = proto.span.start +
                         proto.span.length() * static_cast<double>(i) / (n_samples - 1);
        path.samples[i] = {proto.omega_p(t), proto.omega_s(t)};
    }
    return path;
}

}  // namespace passage
