#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "passage/errors.hpp"
#include "passage/presets.hpp"
#include "passage/sweep.hpp"

using namespace passage;

namespace {

SweepSpec tiny_spec(PulseOrder seq) {
    SweepSpec spec;
    spec.delta_p_axis = {-0.8, 0.35, 0.95};
    spec.delta_s_axis = {-0.9, -0.25, 0.7};
    spec.sequence = seq;
    spec.tau = 100.0;
    spec.delay = 50.0;
    spec.peak_p = 1.0;
    spec.peak_s = 1.0;
    spec.initial_state = 1;
    return spec;
}

}  // namespace

TEST_CASE("boundary curves") {
    const std::vector<double> axis{-1.2, -1.0, -0.5, 0.0, 0.5, 1.0, 1.2};
    const auto b = boundary_curves(2.0, axis, axis);

    SUBCASE("straight lines span the axes") {
        REQUIRE(b.dp_zero.points.size() == axis.size());
        CHECK(b.dp_zero.points.front()[0] == 0.0);
        CHECK(b.ds_zero.points.back()[1] == 0.0);
    }
    SUBCASE("hyperbola passes through the published sample points") {
        bool found_pos = false, found_neg = false;
        for (const auto& pl : b.hyperbolas) {
            for (const auto& pt : pl.points) {
                if (pt[0] == 1.0 && std::abs(pt[1]) < 1e-15) found_pos = true;
                if (pt[0] == -1.0 && std::abs(pt[1]) < 1e-15) found_neg = true;
                // each hyperbola's own singular axis sample is excluded
                if (pl.name.rfind("hyperbola_dp", 0) == 0) CHECK(pt[0] != 0.0);
                if (pl.name.rfind("hyperbola_ds", 0) == 0) CHECK(pt[1] != 0.0);
            }
        }
        CHECK(found_pos);
        CHECK(found_neg);
    }
    SUBCASE("branch split by sign") {
        for (const auto& pl : b.hyperbolas) {
            if (pl.name == "hyperbola_dp_neg")
                for (const auto& pt : pl.points) CHECK(pt[0] < 0.0);
            if (pl.name == "hyperbola_dp_pos")
                for (const auto& pt : pl.points) CHECK(pt[0] > 0.0);
        }
    }
    CHECK_THROWS_AS(boundary_curves(0.0, axis, axis), std::invalid_argument);
    CHECK_THROWS_AS(boundary_curves(-1.0, axis, axis), std::invalid_argument);
}

TEST_CASE("region prediction from the surface topology") {
    SUBCASE("case 213: transfer to |3> for either order once the crossing is reached") {
        for (const auto seq : {PulseOrder::Intuitive, PulseOrder::Counterintuitive})
            CHECK(region_prediction(-0.5, -1.5, 5.0, seq, 1) == 3);
        // peaks below the sqrt(6) crossing: population returns
        for (const auto seq : {PulseOrder::Intuitive, PulseOrder::Counterintuitive})
            CHECK(region_prediction(-0.5, -1.5, 2.0, seq, 1) == 1);
    }
    SUBCASE("case 123: selective transfer by pulse order") {
        CHECK(region_prediction(0.5, -0.5, 5.0, PulseOrder::Intuitive, 1) == 2);
        CHECK(region_prediction(0.5, -0.5, 5.0, PulseOrder::Counterintuitive, 1) == 3);
        CHECK(region_prediction(0.5, -0.5, 1.0, PulseOrder::Intuitive, 1) == 1);
        CHECK(region_prediction(0.5, -0.5, 1.0, PulseOrder::Counterintuitive, 1) == 1);
    }
    SUBCASE("case 123 amplitude selectivity with a weak pump") {
        CHECK(region_prediction(0.5, -0.5, 1.0, 5.0, PulseOrder::Counterintuitive, 1) == 2);
        CHECK(region_prediction(0.5, -0.5, 5.0, 5.0, PulseOrder::Counterintuitive, 1) == 3);
    }
    SUBCASE("vee-system start in |2>") {
        CHECK(region_prediction(0.5, -0.5, 5.0, PulseOrder::Intuitive, 2) == 3);
        CHECK(region_prediction(0.5, -0.5, 5.0, PulseOrder::Counterintuitive, 2) == 1);
    }
    SUBCASE("case 132 needs only the Stokes-edge crossing") {
        CHECK(region_prediction(1.5, 0.5, 5.0, PulseOrder::Intuitive, 1) == 3);
        CHECK(region_prediction(1.5, 0.5, 5.0, PulseOrder::Counterintuitive, 1) == 3);
    }
    SUBCASE("degenerate boundary inputs raise") {
        CHECK_THROWS_AS(region_prediction(0.0, 1.0, 5.0, PulseOrder::Intuitive, 1),
                        DegenerateError);
        CHECK_THROWS_AS(region_prediction(0.7, 0.7, 5.0, PulseOrder::Intuitive, 1),
                        DegenerateError);
    }
    SUBCASE("sign-flip symmetry of the prediction") {
        for (double dp : {-0.9, -0.4, 0.3, 0.8}) {
            for (double ds : {-0.7, -0.2, 0.45, 1.1}) {
                if (dp == ds) continue;
                for (const auto seq :
                     {PulseOrder::Intuitive, PulseOrder::Counterintuitive}) {
                    CHECK(region_prediction(dp, ds, 5.0, seq, 1) ==
                          region_prediction(-dp, -ds, 5.0, seq, 1));
                }
            }
        }
    }
}

TEST_CASE("efficiency maps") {
    SUBCASE("populations sum to one and points succeed") {
        const auto res = efficiency_map(tiny_spec(PulseOrder::Counterintuitive));
        CHECK(res.failed_points == 0);
        for (Eigen::Index i = 0; i < res.p1.rows(); ++i)
            for (Eigen::Index j = 0; j < res.p1.cols(); ++j)
                CHECK(res.p1(i, j) + res.p2(i, j) + res.p3(i, j) ==
                      doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("assembly is independent of the worker count") {
        auto one = tiny_spec(PulseOrder::Intuitive);
        one.workers = 1;
        auto two = tiny_spec(PulseOrder::Intuitive);
        two.workers = 2;
        const auto a = efficiency_map(one);
        const auto b = efficiency_map(two);
        CHECK((a.p2 - b.p2).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((a.p3 - b.p3).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("detuning sign flip leaves the population grids unchanged") {
        auto spec = tiny_spec(PulseOrder::Counterintuitive);
        const auto base = efficiency_map(spec);
        auto flipped = spec;
        for (auto& v : flipped.delta_p_axis) v = -v;
        for (auto& v : flipped.delta_s_axis) v = -v;
        std::reverse(flipped.delta_p_axis.begin(), flipped.delta_p_axis.end());
        std::reverse(flipped.delta_s_axis.begin(), flipped.delta_s_axis.end());
        const auto mirror = efficiency_map(flipped);
        const Eigen::Index nr = base.p2.rows(), nc = base.p2.cols();
        for (Eigen::Index i = 0; i < nr; ++i)
            for (Eigen::Index j = 0; j < nc; ++j) {
                CHECK(std::abs(base.p2(i, j) -
                               mirror.p2(nr - 1 - i, nc - 1 - j)) <= 1e-12);
                CHECK(std::abs(base.p3(i, j) -
                               mirror.p3(nr - 1 - i, nc - 1 - j)) <= 1e-12);
            }
    }
    SUBCASE("single-point sweep equals a direct propagation") {
        SweepSpec spec = tiny_spec(PulseOrder::Counterintuitive);
        spec.delta_p_axis = {0.35};
        spec.delta_s_axis = {-0.4};
        const auto res = efficiency_map(spec);
        const auto proto = stirap_schedule(spec.sequence, spec.tau, spec.delay,
                                           spec.peak_p, spec.peak_s,
                                           0.35 * spec.omega_max(),
                                           -0.4 * spec.omega_max());
        const auto direct = propagate(proto, 1,
                                      {.tol = spec.tol, .samples = 129,
                                       .with_margin = false});
        CHECK(res.p1(0, 0) == direct.final_populations()(0));
        CHECK(res.p2(0, 0) == direct.final_populations()(1));
        CHECK(res.p3(0, 0) == direct.final_populations()(2));
    }
    SUBCASE("failing points carry the missing-data marker without aborting") {
        auto spec = tiny_spec(PulseOrder::Counterintuitive);
        spec.tol = 1e-30;  // forces step underflow at every point
        const auto res = efficiency_map(spec);
        CHECK(res.failed_points == 9);
        for (Eigen::Index i = 0; i < res.p1.rows(); ++i)
            for (Eigen::Index j = 0; j < res.p1.cols(); ++j)
                CHECK(res.p1(i, j) == kMissingData);
    }
    SUBCASE("spec validation") {
        auto spec = tiny_spec(PulseOrder::Intuitive);
        spec.delta_p_axis.clear();
        CHECK_THROWS_AS(efficiency_map(spec), std::invalid_argument);
        spec = tiny_spec(PulseOrder::Intuitive);
        spec.initial_state = 5;
        CHECK_THROWS_AS(efficiency_map(spec), std::invalid_argument);
        spec = tiny_spec(PulseOrder::Intuitive);
        spec.delta_s_axis = {0.5, 0.5};
        CHECK_THROWS_AS(efficiency_map(spec), std::invalid_argument);
    }
}

TEST_CASE("default detuning axis brackets the hyperbola vertices") {
    const auto ax = default_detuning_axis(41);
    REQUIRE(ax.size() == 41);
    CHECK(ax.front() == doctest::Approx(-1.2));
    CHECK(ax.back() == doctest::Approx(1.2));
    CHECK(std::is_sorted(ax.begin(), ax.end()));
}
