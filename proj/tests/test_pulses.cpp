#include <doctest.h>

#include <cmath>

#include "passage/errors.hpp"
#include "passage/presets.hpp"
#include "passage/pulses.hpp"

using namespace passage;

TEST_CASE("envelope evaluation") {
    const Envelope sine{Shape::SineSquared, 5.0, 0.0, 2.0};
    CHECK(sine.value(0.0) == 5.0);
    CHECK(sine.value(1.0) == 0.0);
    CHECK(sine.value(-1.0) == 0.0);
    CHECK(sine.value(3.0) == 0.0);
    CHECK(sine.value(0.5) == doctest::Approx(2.5).epsilon(1e-14));

    const Envelope gauss{Shape::Gaussian, 4.0, 1.0, 2.0};
    CHECK(gauss.value(3.0) == doctest::Approx(4.0 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(gauss.value(1.0) == 4.0);
    CHECK(envelope_value(gauss, -1e6) >= 0.0);

    SUBCASE("sine-squared support and nonnegativity") {
        for (double t = -1.5; t <= 1.5; t += 1e-2) {
            CHECK(sine.value(t) >= 0.0);
            if (std::abs(t) > 1.0) CHECK(sine.value(t) == 0.0);
        }
    }
}

TEST_CASE("temporal pulse area of a sine-squared envelope") {
    const Envelope e{Shape::SineSquared, 3.0, 7.0, 10.0};
    // closed form peak * tau / 2 against Simpson quadrature
    const double closed = e.peak * e.width / 2.0;
    const int n = 4000;
    const double h = e.width / n;
    double simpson = e.value(e.support_start()) + e.value(e.support_end());
    for (int k = 1; k < n; ++k)
        simpson += e.value(e.support_start() + k * h) * (k % 2 ? 4.0 : 2.0);
    simpson *= h / 3.0;
    CHECK(simpson == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("stirap schedules") {
    SUBCASE("counterintuitive placement") {
        const auto proto =
            stirap_schedule(PulseOrder::Counterintuitive, 1.0, 0.5, 1.0, 1.0);
        CHECK(proto.stokes_or_stark.center == doctest::Approx(0.5));
        CHECK(proto.pump.center == doctest::Approx(1.0));
        CHECK(proto.span.start == 0.0);
        CHECK(proto.span.end == doctest::Approx(1.5));
        // symmetric overlap point
        CHECK(proto.omega_s(0.75) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(proto.omega_p(0.75) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("intuitive schedule mirrors the counterintuitive one") {
        const auto ci =
            stirap_schedule(PulseOrder::Counterintuitive, 1.0, 0.5, 1.0, 1.0);
        const auto in = stirap_schedule(PulseOrder::Intuitive, 1.0, 0.5, 1.0, 1.0);
        const double mid = 0.5 * (ci.span.start + ci.span.end);
        for (double t = ci.span.start; t <= ci.span.end; t += 0.05) {
            CHECK(in.omega_p(t) ==
                  doctest::Approx(ci.omega_p(2 * mid - t)).epsilon(1e-12));
            CHECK(in.omega_s(t) ==
                  doctest::Approx(ci.omega_s(2 * mid - t)).epsilon(1e-12));
        }
    }
    SUBCASE("zero delay degenerates to simultaneous pulses") {
        const auto proto =
            stirap_schedule(PulseOrder::Counterintuitive, 2.0, 0.0, 1.0, 2.0);
        for (double t = 0.0; t <= 2.0; t += 0.1)
            CHECK(proto.omega_p(t) == doctest::Approx(0.5 * proto.omega_s(t)));
    }
    SUBCASE("geometry validation") {
        CHECK_THROWS_AS(stirap_schedule(PulseOrder::Intuitive, 1.0, 1.0, 1.0, 1.0),
                        GeometryError);
        CHECK_THROWS_AS(stirap_schedule(PulseOrder::Intuitive, 1.0, 1.5, 1.0, 1.0),
                        GeometryError);
        CHECK_THROWS_AS(stirap_schedule(PulseOrder::Intuitive, 0.0, 0.0, 1.0, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(stirap_schedule(PulseOrder::Intuitive, 1.0, 0.5, -1.0, 1.0),
                        std::invalid_argument);
    }
    SUBCASE("general builder infers the sequence and requires overlap") {
        const Envelope pump{Shape::SineSquared, 1.0, 3.0, 2.0};
        const Envelope stokes{Shape::SineSquared, 1.0, 2.0, 2.0};
        const auto proto = make_stirap(pump, stokes, 0.5, -0.5);
        CHECK(proto.sequence == PulseOrder::Counterintuitive);
        CHECK(proto.span.start == doctest::Approx(1.0));
        CHECK(proto.span.end == doctest::Approx(4.0));
        const Envelope late{Shape::SineSquared, 1.0, 10.0, 2.0};
        CHECK_THROWS_AS(make_stirap(late, stokes, 0.5, -0.5), GeometryError);
    }
}

TEST_CASE("chirp and SCRAP schedules") {
    SUBCASE("direct chirp ramps through resonance with clipping") {
        const Envelope pump{Shape::SineSquared, 1.0, 0.0, 4.0};
        const auto proto =
            chirp_schedule(ProtocolKind::DirectChirp, -1.0, pump, {}, 1.0);
        CHECK(proto.span.start == doctest::Approx(-2.0));
        CHECK(proto.span.end == doctest::Approx(2.0));
        CHECK(proto.detuning(-2.0) == doctest::Approx(-1.0));
        CHECK(proto.detuning(0.0) == doctest::Approx(0.0));
        CHECK(proto.detuning(2.0) == doctest::Approx(1.0));
        CHECK(proto.omega(0.0) == doctest::Approx(1.0));
        CHECK(proto.levels() == 2);
    }
    SUBCASE("scrap-b crosses resonance while the pump is off") {
        const auto proto = presets::scrap_b();
        // locate the rising zero crossing of the effective detuning
        double t_cross = proto.span.start;
        for (double t = proto.span.start; t <= proto.span.end; t += 0.25) {
            if (proto.detuning(t) >= 0.0) {
                t_cross = t;
                break;
            }
        }
        CHECK(proto.detuning(proto.span.start) == doctest::Approx(-1.0));
        CHECK(proto.omega(t_cross) == 0.0);  // mute resonance
        CHECK(proto.detuning(proto.span.end) == doctest::Approx(-1.0));
    }
    SUBCASE("scrap preconditions and geometry") {
        const double tau = 100.0;
        const Envelope stark{Shape::SineSquared, 2.0, 0.5 * tau, tau};
        const Envelope pump{Shape::SineSquared, 1.0, 1.2 * tau, tau};
        CHECK_NOTHROW(chirp_schedule(ProtocolKind::ScrapB, -1.0, pump, stark, 0.0));
        // a Stark pulse that never reaches resonance
        const Envelope weak{Shape::SineSquared, 0.5, 0.5 * tau, tau};
        CHECK_THROWS_AS(chirp_schedule(ProtocolKind::ScrapB, -1.0, pump, weak, 0.0),
                        std::invalid_argument);
        // orderings contradicting the requested kind
        CHECK_THROWS_AS(chirp_schedule(ProtocolKind::ScrapC, -1.0, pump, stark, 0.0),
                        GeometryError);
        CHECK_THROWS_AS(chirp_schedule(ProtocolKind::ScrapB, -0.5, stark, pump, 0.0),
                        GeometryError);
        CHECK_THROWS_AS(
            chirp_schedule(ProtocolKind::DirectChirp, 1.0, pump, {}, 1.0),
            std::invalid_argument);
        CHECK_THROWS_AS(
            chirp_schedule(ProtocolKind::DirectChirp, -1.0, pump, {}, 0.0),
            std::invalid_argument);
    }
    SUBCASE("preset protocols keep Rabi components nonnegative and continuous") {
        for (const auto& proto : {presets::direct_chirp_a(), presets::scrap_b(),
                                  presets::scrap_c()}) {
            const double dt = proto.span.length() / 5000.0;
            double prev = proto.omega(proto.span.start);
            for (double t = proto.span.start; t <= proto.span.end; t += dt) {
                const double w = proto.omega(t);
                CHECK(w >= 0.0);
                CHECK(std::abs(w - prev) < 0.02);
                prev = w;
            }
        }
    }
}
