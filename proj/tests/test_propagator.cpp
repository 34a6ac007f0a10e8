#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "passage/errors.hpp"
#include "passage/presets.hpp"
#include "passage/propagator.hpp"

using namespace passage;

TEST_CASE("landau-zener oracle closed form") {
    CHECK(landau_zener_oracle(0.0, 1.0) == 0.0);
    CHECK(landau_zener_oracle(1.0, 1e-6) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(landau_zener_oracle(1.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-std::numbers::pi / 2)).epsilon(1e-15));
    CHECK_THROWS_AS(landau_zener_oracle(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(landau_zener_oracle(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("uncoupled propagation leaves populations frozen") {
    auto diagonal = [](double) {
        Eigen::MatrixXd h(2, 2);
        h << 0.0, 0.0, 0.0, 5.0;
        return h;
    };
    Amplitudes psi0 = Amplitudes::Zero(2);
    psi0(1) = 1.0;
    const auto res = propagate_hamiltonian(diagonal, {0.0, 4.0}, psi0);
    for (const auto& pop : res.populations) {
        CHECK(pop(1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pop(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
    // only a phase evolves
    const std::complex<double> a = res.states.back()(1);
    CHECK(std::abs(a) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::arg(a) == doctest::Approx(std::arg(std::exp(std::complex<double>(
                             0.0, -5.0 * 4.0)))).epsilon(1e-6));

    // the same through a protocol whose pump never switches on
    const Envelope off{Shape::SineSquared, 0.0, 0.0, 4.0};
    const auto proto = chirp_schedule(ProtocolKind::DirectChirp, -5.0, off, {},
                                      1.0, TimeSpan{-2.0, 2.0});
    const auto res2 = propagate(proto, 1, {.with_margin = false});
    CHECK(res2.final_populations()(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linear chirp reproduces the landau-zener probability") {
    const auto proto = presets::landau_zener(1.0, 1.0, 50.0);
    const auto res = propagate(proto, 1, {.tol = 1e-10, .samples = 512});
    const double want = landau_zener_oracle(1.0, 1.0);
    CHECK(std::abs(res.final_populations()(1) - want) < 1e-3);
    CHECK(res.norm_drift <= 1e-9);
}

TEST_CASE("propagation input validation") {
    const auto proto = presets::stirap_resonant(PulseOrder::Counterintuitive, 50.0);
    Amplitudes bad = Amplitudes::Zero(3);
    bad(0) = 0.5;
    CHECK_THROWS_AS(propagate(proto, bad), std::invalid_argument);
    CHECK_THROWS_AS(propagate(proto, Amplitudes::Ones(2).eval()),
                    std::invalid_argument);
    CHECK_THROWS_AS(propagate(proto, 4), std::invalid_argument);
}

TEST_CASE("step underflow reports instead of spinning") {
    const auto proto = presets::stirap_resonant(PulseOrder::Counterintuitive, 50.0);
    CHECK_THROWS_AS(propagate(proto, 1, {.tol = 1e-30, .samples = 8}),
                    StepUnderflowError);
}

TEST_CASE("norm drift stays within budget at default tolerance") {
    const auto res =
        propagate(presets::stirap_case123(PulseOrder::Counterintuitive, 500.0), 1);
    CHECK(res.norm_drift <= 1e-9);
    for (const auto& pop : res.populations)
        CHECK(pop.sum() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("halving the tolerance leaves final populations settled") {
    const auto proto = presets::stirap_case123(PulseOrder::Counterintuitive, 500.0);
    const auto a = propagate(proto, 1, {.tol = 1e-10, .samples = 64, .with_margin = false});
    const auto b = propagate(proto, 1, {.tol = 5e-11, .samples = 64, .with_margin = false});
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(a.final_populations()(k) - b.final_populations()(k)) < 1e-6);
}

TEST_CASE("two-level adiabaticity margin") {
    SUBCASE("constant drive never mixes") {
        const double inf = std::numeric_limits<double>::infinity();
        CHECK(adiabaticity_margin_2([](double) { return 1.0; },
                                    [](double) { return 0.5; },
                                    {0.0, 10.0}) == inf);
    }
    SUBCASE("unit coupling under unit chirp rate has margin 2") {
        const double m = adiabaticity_margin_2([](double) { return 1.0; },
                                               [](double t) { return t; },
                                               {-10.0, 10.0});
        CHECK(m == doctest::Approx(2.0).epsilon(1e-4));
    }
    SUBCASE("time rescaling scales the margin") {
        const double k = 3.0;
        const double m1 = adiabaticity_margin_2([](double) { return 1.0; },
                                                [](double t) { return t; },
                                                {-10.0, 10.0});
        const double mk = adiabaticity_margin_2(
            [](double) { return 1.0; }, [k](double t) { return t / k; },
            {-10.0 * k, 10.0 * k});
        CHECK(mk == doctest::Approx(k * m1).epsilon(1e-3));
    }
    SUBCASE("vanishing gap on the interior is reported") {
        CHECK_THROWS_AS(adiabaticity_margin_2([](double) { return 0.0; },
                                              [](double) { return 0.0; },
                                              {0.0, 1.0}),
                        std::domain_error);
    }
}

TEST_CASE("three-level adiabaticity margin") {
    SUBCASE("proportional pulses pin the eigenvectors") {
        const auto proto =
            stirap_schedule(PulseOrder::Counterintuitive, 10.0, 0.0, 2.0, 2.0);
        CHECK(adiabaticity_margin_3(proto) ==
              std::numeric_limits<double>::infinity());
    }
    SUBCASE("large pulse area is deeply adiabatic, small area is not") {
        const auto big = presets::stirap_resonant(PulseOrder::Counterintuitive, 500.0);
        CHECK(adiabaticity_margin_3(big) > 10.0);  // measured ~40: well adiabatic
        const auto small = presets::stirap_resonant(PulseOrder::Counterintuitive, 5.0);
        CHECK(adiabaticity_margin_3(small) < 1.0);
        const auto res_small = propagate(small, 1, {.with_margin = false});
        CHECK(res_small.final_populations()(2) < 0.9);
    }
    SUBCASE("margin grows linearly with the protocol length") {
        const double m1 =
            adiabaticity_margin_3(presets::stirap_case123(PulseOrder::Intuitive, 500.0));
        const double m4 =
            adiabaticity_margin_3(presets::stirap_case123(PulseOrder::Intuitive, 2000.0));
        CHECK(m4 / m1 == doctest::Approx(4.0).epsilon(1e-2));
    }
}

TEST_CASE("time reversal restores the initial populations") {
    const auto proto = presets::stirap_case213(PulseOrder::Counterintuitive, 500.0);
    const PropagateOptions opts{.tol = 1e-10, .samples = 16, .with_margin = false};
    const auto forward = propagate(proto, 1, opts);

    auto reversed_h = [&proto](double t) -> Eigen::MatrixXd {
        const double tr = proto.span.start + proto.span.end - t;
        return h3({proto.delta_p, proto.delta_s, proto.omega_p(tr),
                   proto.omega_s(tr)});
    };
    // reversed protocol plus conjugation realizes the anti-unitary reversal
    const Amplitudes back0 = forward.states.back().conjugate();
    const auto back =
        propagate_hamiltonian(reversed_h, proto.span, back0, opts);
    CHECK(back.final_populations()(0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(back.final_populations()(1) < 1e-6);
    CHECK(back.final_populations()(2) < 1e-6);
}

TEST_CASE("adiabatic transfer follows the tracked diabatic label") {
    const auto proto = presets::stirap_case213(PulseOrder::Counterintuitive, 5200.0);
    const auto res = propagate(proto, 1);
    CHECK(res.adiabaticity_margin > 100.0);
    const int predicted =
        track_path(proto.delta_p, proto.delta_s, protocol_parameter_path(proto), 1);
    CHECK(res.final_populations()(predicted - 1) > 0.9);
}

TEST_CASE("output sampling contract") {
    const auto proto = presets::stirap_resonant(PulseOrder::Counterintuitive, 100.0);
    const auto res = propagate(proto, 1, {.samples = 700, .with_margin = false});
    REQUIRE(res.times.size() == 700);
    CHECK(res.times.front() == doctest::Approx(proto.span.start));
    CHECK(res.times.back() == doctest::Approx(proto.span.end));
    const double dt = res.times[1] - res.times[0];
    for (std::size_t k = 1; k < res.times.size(); ++k)
        CHECK(res.times[k] - res.times[k - 1] == doctest::Approx(dt).epsilon(1e-9));
}
