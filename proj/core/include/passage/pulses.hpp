// pulses.hpp - pulse envelopes and complete time-dependent protocols:
// direct chirp, SCRAP variants, and STIRAP sequences with independent
// lengths and peaks.

#pragma once

#include <optional>

#include "passage/model.hpp"

namespace passage {

enum class Shape { SineSquared, Gaussian };

// SineSquared: peak sin^2(pi (t - center + w/2) / w) on
// [center - w/2, center + w/2] and exactly 0 outside (w = full base length).
// Gaussian: peak exp(-((t - center) / w)^2) (w = 1/e half-width).
struct Envelope {
    Shape shape = Shape::SineSquared;
    double peak = 0.0;   // >= 0, frequency units
    double center = 0.0;
    double width = 1.0;  // > 0

    double value(double t) const;
    double support_start() const;  // -inf for Gaussian
    double support_end() const;
};

double envelope_value(const Envelope& e, double t);

enum class ProtocolKind { DirectChirp, ScrapB, ScrapC, Stirap };
enum class PulseOrder { Intuitive, Counterintuitive };

struct TimeSpan {
    double start = 0.0;
    double end = 1.0;
    double length() const { return end - start; }
};

// A complete time-dependent drive. Two-level kinds (DirectChirp, ScrapB,
// ScrapC) define Omega(t) and Delta(t); Stirap defines Omega_P(t),
// Omega_S(t) at fixed one-photon detunings.
struct Protocol {
    ProtocolKind kind = ProtocolKind::Stirap;
    Envelope pump;
    Envelope stokes_or_stark;  // Stokes for Stirap, Stark for SCRAP, unused for DirectChirp
    double static_detuning = 0.0;  // Delta_0 (two-level kinds)
    double chirp_rate = 0.0;       // DirectChirp only
    PulseOrder sequence = PulseOrder::Counterintuitive;  // Stirap only
    double delta_p = 0.0;  // Stirap one-photon detunings
    double delta_s = 0.0;
    TimeSpan span;

    int levels() const { return kind == ProtocolKind::Stirap ? 3 : 2; }

    // two-level time functions
    double omega(double t) const;
    double detuning(double t) const;
    // three-level time functions
    double omega_p(double t) const { return pump.value(t); }
    double omega_s(double t) const { return stokes_or_stark.value(t); }
};

// Two delayed sine-squared pulses of equal length tau, centers separated
// by `delay`, ordered per `sequence` (counterintuitive: Stokes first).
// The resulting span is [0, tau + delay]. Requires 0 <= delay < tau so
// the pulses overlap. Detunings default to exact resonance.
Protocol stirap_schedule(PulseOrder sequence, double tau, double delay,
                         double peak_p, double peak_s, double delta_p = 0.0,
                         double delta_s = 0.0);

// General STIRAP protocol from explicit envelopes (independent lengths and
// peaks); the sequence is inferred from the center ordering. Envelope
// supports must overlap.
Protocol make_stirap(const Envelope& pump, const Envelope& stokes,
                     double delta_p, double delta_s);

// Two-level chirp/SCRAP protocols.
//   DirectChirp: Delta(t) = clamp(chirp_rate (t - pump.center), delta_in,
//                -delta_in), Omega(t) = pump envelope.
//   ScrapB: Delta(t) = delta_in + stark(t); the Stark pulse peaks before
//           the pump rises and the pump outlasts it.
//   ScrapC: the pump rises first; the Stark pulse switches off after it.
// delta_in must be negative; for SCRAP the Stark peak must exceed
// |delta_in| so the effective detuning sweeps through resonance. The span
// is derived from the envelope supports when omitted (compact shapes only).
Protocol chirp_schedule(ProtocolKind kind, double delta_in, const Envelope& pump,
                        const Envelope& stark, double chirp_rate,
                        std::optional<TimeSpan> span = std::nullopt);

}  // namespace passage
