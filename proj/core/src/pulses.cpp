#include "passage/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "passage/errors.hpp"

namespace passage {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_envelope(const Envelope& e, const char* who) {
    if (e.peak < 0.0)
        throw std::invalid_argument(std::string(who) + ": envelope peak must be >= 0");
    if (!(e.width > 0.0))
        throw std::invalid_argument(std::string(who) + ": envelope width must be > 0");
}

bool compact(const Envelope& e) { return e.shape == Shape::SineSquared; }

// Times where a pulse passes the given level on its rise and fall.
// Requires 0 < level < peak.
std::pair<double, double> level_crossings(const Envelope& e, double level) {
    if (e.shape == Shape::SineSquared) {
        const double x = std::asin(std::sqrt(level / e.peak)) / std::numbers::pi;  // in (0, 1/2)
        return {e.support_start() + x * e.width, e.support_end() - x * e.width};
    }
    const double dt = e.width * std::sqrt(std::log(e.peak / level));
    return {e.center - dt, e.center + dt};
}

}  // namespace

double Envelope::value(double t) const {
    switch (shape) {
        case Shape::SineSquared: {
            const double lo = center - 0.5 * width;
            const double hi = center + 0.5 * width;
            if (t <= lo || t >= hi) return 0.0;
            const double s = std::sin(std::numbers::pi * (t - lo) / width);
            return peak * s * s;
        }
        case Shape::Gaussian: {
            const double u = (t - center) / width;
            return peak * std::exp(-u * u);
        }
    }
    return 0.0;
}

double Envelope::support_start() const {
    return compact(*this) ? center - 0.5 * width : -kInf;
}

double Envelope::support_end() const {
    return compact(*this) ? center + 0.5 * width : kInf;
}

double envelope_value(const Envelope& e, double t) { return e.value(t); }

double Protocol::omega(double t) const { return pump.value(t); }

double Protocol::detuning(double t) const {
    if (kind == ProtocolKind::DirectChirp) {
        const double ramp = chirp_rate * (t - pump.center);
        return std::clamp(ramp, static_detuning, -static_detuning);
    }
    return static_detuning + stokes_or_stark.value(t);
}

Protocol stirap_schedule(PulseOrder sequence, double tau, double delay,
                         double peak_p, double peak_s, double delta_p,
                         double delta_s) {
    if (!(tau > 0.0))
        throw std::invalid_argument("stirap_schedule: tau must be > 0");
    if (delay < 0.0 || delay >= tau)
        throw GeometryError("stirap_schedule: need 0 <= delay < tau for overlapping pulses");
    const double first_center = 0.5 * tau;
    const double second_center = 0.5 * tau + delay;
    Envelope pump{Shape::SineSquared, peak_p, 0.0, tau};
    Envelope stokes{Shape::SineSquared, peak_s, 0.0, tau};
    if (sequence == PulseOrder::Counterintuitive) {
        stokes.center = first_center;
        pump.center = second_center;
    } else {
        pump.center = first_center;
        stokes.center = second_center;
    }
    check_envelope(pump, "stirap_schedule");
    check_envelope(stokes, "stirap_schedule");
    Protocol proto;
    proto.kind = ProtocolKind::Stirap;
    proto.pump = pump;
    proto.stokes_or_stark = stokes;
    proto.sequence = sequence;
    proto.delta_p = delta_p;
    proto.delta_s = delta_s;
    proto.span = {0.0, tau + delay};
    return proto;
}

Protocol make_stirap(const Envelope& pump, const Envelope& stokes,
                     double delta_p, double delta_s) {
    check_envelope(pump, "make_stirap");
    check_envelope(stokes, "make_stirap");
    if (compact(pump) && compact(stokes)) {
        if (pump.support_start() >= stokes.support_end() ||
            stokes.support_start() >= pump.support_end())
            throw GeometryError("make_stirap: pulse supports must overlap");
    }
    Protocol proto;
    proto.kind = ProtocolKind::Stirap;
    proto.pump = pump;
    proto.stokes_or_stark = stokes;
    proto.sequence = stokes.center <= pump.center ? PulseOrder::Counterintuitive
                                                  : PulseOrder::Intuitive;
    proto.delta_p = delta_p;
    proto.delta_s = delta_s;
    proto.span = {std::min(pump.support_start(), stokes.support_start()),
                  std::max(pump.support_end(), stokes.support_end())};
    return proto;
}

Protocol chirp_schedule(ProtocolKind kind, double delta_in, const Envelope& pump,
                        const Envelope& stark, double chirp_rate,
                        std::optional<TimeSpan> span) {
    if (kind == ProtocolKind::Stirap)
        throw std::invalid_argument("chirp_schedule: two-level kinds only");
    if (!(delta_in < 0.0))
        throw std::invalid_argument("chirp_schedule: delta_in must be negative");
    check_envelope(pump, "chirp_schedule");

    Protocol proto;
    proto.kind = kind;
    proto.pump = pump;
    proto.static_detuning = delta_in;

    if (kind == ProtocolKind::DirectChirp) {
        if (!(chirp_rate > 0.0))
            throw std::invalid_argument("chirp_schedule: chirp_rate must be > 0");
        proto.chirp_rate = chirp_rate;
        if (span) {
            proto.span = *span;
        } else if (compact(pump)) {
            const double reach = -delta_in / chirp_rate;  // ramp hits +-|delta_in|
            proto.span = {std::min(pump.support_start(), pump.center - reach),
                          std::max(pump.support_end(), pump.center + reach)};
        } else {
            throw std::invalid_argument(
                "chirp_schedule: span required with non-compact envelopes");
        }
        return proto;
    }

    // SCRAP variants
    check_envelope(stark, "chirp_schedule");
    if (!(stark.peak > -delta_in))
        throw std::invalid_argument(
            "chirp_schedule: Stark peak must exceed |delta_in| to sweep through resonance");
    proto.stokes_or_stark = stark;
    const auto [rise_cross, fall_cross] = level_crossings(stark, -delta_in);

    if (kind == ProtocolKind::ScrapB) {
        // Stark first; the rising resonance crossing is mute (pump off), the
        // falling one is driven; the pump outlasts the Stark pulse.
        if (!(stark.center < pump.center) || pump.support_start() < rise_cross)
            throw GeometryError("chirp_schedule: ScrapB needs the pump switched on "
                                "after the rising resonance crossing");
        if (!(pump.support_start() < fall_cross && fall_cross < pump.support_end()))
            throw GeometryError("chirp_schedule: ScrapB needs the pump on at the "
                                "falling resonance crossing");
        if (pump.support_end() <= stark.support_end())
            throw GeometryError("chirp_schedule: ScrapB pump must outlast the Stark pulse");
    } else {
        // ScrapC: pump first; the rising crossing is driven, the falling one
        // is mute; the Stark pulse switches off after the pump.
        if (!(pump.center < stark.center) ||
            !(pump.support_start() < rise_cross && rise_cross < pump.support_end()))
            throw GeometryError("chirp_schedule: ScrapC needs the pump on at the "
                                "rising resonance crossing");
        if (fall_cross < pump.support_end())
            throw GeometryError("chirp_schedule: ScrapC needs the pump switched off "
                                "before the falling resonance crossing");
        if (stark.support_end() <= pump.support_end())
            throw GeometryError("chirp_schedule: ScrapC Stark pulse must outlast the pump");
    }

    if (span) {
        proto.span = *span;
    } else if (compact(pump) && compact(stark)) {
        proto.span = {std::min(pump.support_start(), stark.support_start()),
                      std::max(pump.support_end(), stark.support_end())};
    } else {
        throw std::invalid_argument(
            "chirp_schedule: span required with non-compact envelopes");
    }
    return proto;
}

}  // namespace passage
