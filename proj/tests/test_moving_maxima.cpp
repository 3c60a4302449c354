#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "maxid/moving_maxima.hpp"
#include "support/random_models.hpp"

using namespace maxid;
using maxid::testsupport::ModelOptions;
using maxid::testsupport::random_event;
using maxid::testsupport::random_model;

namespace {

MovingMaximaModel single_profile(double value_at_0, double mass) {
    return MovingMaximaModel({Profile{mass, {{0, value_at_0}}}}, {});
}

}  // namespace

TEST_SUITE("moving_maxima") {

TEST_CASE("finite dimensional measure of a one-point profile") {
    const MovingMaximaModel model = single_profile(1.5, 0.4);
    const int idx[] = {0, 3};
    const AtomicExponentMeasure q = model.finite_dim_measure(idx);
    REQUIRE(q.atoms().size() == 2);
    CHECK(q.atoms()[0].point == ExtendedPoint{kNegInf, 1.5});
    CHECK(q.atoms()[0].mass == 0.4);
    CHECK(q.atoms()[1].point == ExtendedPoint{1.5, kNegInf});
    CHECK(q.atoms()[1].mass == 0.4);
}

TEST_CASE("diagonal atoms sit on the diagonal at every index set") {
    const MovingMaximaModel model({}, {{0.7, 0.25}});
    const int idx[] = {0, 5};
    const AtomicExponentMeasure q = model.finite_dim_measure(idx);
    REQUIRE(q.atoms().size() == 1);
    CHECK(q.atoms()[0].point == ExtendedPoint{0.7, 0.7});
    CHECK(q.atoms()[0].mass == 0.25);
}

TEST_CASE("stationarity: shifted index sets give the identical measure") {
    Rng rng(2024, 7);
    for (int rep = 0; rep < 50; ++rep) {
        const MovingMaximaModel model = random_model(rng);
        const int base[] = {0, 3};
        const int shifted[] = {7, 10};
        CHECK(approx_equal(model.finite_dim_measure(base),
                           model.finite_dim_measure(shifted)));
        const int base3[] = {-2, 0, 5};
        const int shifted3[] = {-9, -7, -2};
        CHECK(approx_equal(model.finite_dim_measure(base3),
                           model.finite_dim_measure(shifted3)));
    }
}

TEST_CASE("projection commutes with the finite dimensional construction") {
    Rng rng(99, 1);
    const std::size_t first[] = {0};
    for (int rep = 0; rep < 50; ++rep) {
        const MovingMaximaModel model = random_model(rng);
        const int pair_idx[] = {0, 4};
        const int zero_idx[] = {0};
        CHECK(approx_equal(model.finite_dim_measure(pair_idx).project(first),
                           model.finite_dim_measure(zero_idx), 1e-12));
    }
}

TEST_CASE("tau on frozen examples") {
    // single-lag profiles only: independence off lag 0
    const MovingMaximaModel indep(
        {Profile{0.5, {{0, 1.0}}}, Profile{0.3, {{2, 2.0}}}}, {});
    CHECK(indep.tau_exact(0.0, 1) == 0.0);
    CHECK(indep.tau_exact(0.0, 5) == 0.0);
    CHECK(indep.tau_from_definition(0.0, 3) == doctest::Approx(0.0).epsilon(1e-14));

    // a diagonal atom above level a contributes its mass at every lag
    const MovingMaximaModel diag({}, {{1.0, 0.6}});
    for (int t : {0, 1, 2, 17, -3}) CHECK(diag.tau_exact(0.5, t) == 0.6);
    CHECK(diag.tau_from_definition(0.5, 9) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(diag.tau_exact(1.5, 4) == 0.0);  // level above the atom

    // flat two-point profile: only the aligned shift covers both indices
    const MovingMaximaModel flat({Profile{0.45, {{0, 1.0}, {1, 1.0}}}}, {});
    CHECK(flat.tau_exact(0.5, 1) == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(flat.tau_exact(0.5, 2) == 0.0);
}

TEST_CASE("tau matches the quadrant mass of the induced measure") {
    Rng rng(15, 0);
    for (int rep = 0; rep < 40; ++rep) {
        const MovingMaximaModel model = random_model(rng);
        for (int t : {0, 1, 4}) {
            const int idx[] = {0, t};
            const double a = -0.5 + rng.uniform() * 3.0;
            const double quadrant =
                model.finite_dim_measure(idx).upper_quadrant_mass(
                    std::vector<double>{a, a});
            CHECK(model.tau_exact(a, t) == doctest::Approx(quadrant).epsilon(1e-13));
        }
    }
}

TEST_CASE("tau properties: agreement, symmetry, bounds, monotonicity") {
    Rng rng(512, 3);
    for (int rep = 0; rep < 60; ++rep) {
        const MovingMaximaModel model = random_model(rng);
        const double bound0 = model.level_exceedance_rate(-1.0);
        for (double a : {-1.0, 0.0, 1.0, 2.0}) {
            const double cap = model.level_exceedance_rate(a);
            CHECK(cap <= bound0 + 1e-14);  // non-increasing in a
            for (int t = 0; t <= 8; ++t) {
                const double tau = model.tau_exact(a, t);
                CHECK(tau == model.tau_exact(a, -t));
                CHECK(tau >= 0.0);
                CHECK(tau <= cap + 1e-14);
                CHECK(std::abs(tau - model.tau_from_definition(a, t)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("cylinder joint probabilities") {
    const MovingMaximaModel model(
        {Profile{0.35, {{0, 1.2}, {1, 0.4}}}, Profile{0.2, {{-1, 2.0}}}}, {{0.9, 0.15}});

    const CylinderEvent a{{{0, 1.0}, {1, 0.8}}};
    // single event equals the plain cylinder probability on its indices
    const int idx[] = {0, 1};
    const std::vector<double> levels{1.0, 0.8};
    CHECK(model.event_prob(a) ==
          doctest::Approx(model.finite_dim_measure(idx).cylinder_prob(levels))
              .epsilon(1e-15));

    // duplicate indices take the minimum level
    const CylinderEvent dup{{{0, 1.0}, {0, 0.3}}};
    const int one[] = {0};
    CHECK(model.event_prob(dup) ==
          doctest::Approx(model.finite_dim_measure(one).cylinder_prob(
              std::vector<double>{0.3}))
              .epsilon(1e-15));

    // intersecting an event with itself at shift 0 is idempotent
    const CylinderEvent b{{{0, 0.7}}};
    const std::pair<CylinderEvent, int> twice[] = {{b, 0}, {b, 0}};
    CHECK(model.cylinder_joint_prob(twice) ==
          doctest::Approx(model.event_prob(b)).epsilon(1e-15));
}

TEST_CASE("far-apart windows factorize exactly") {
    Rng rng(777, 2);
    ModelOptions opt;
    opt.diagonal_allowed = false;
    for (int rep = 0; rep < 25; ++rep) {
        const MovingMaximaModel model = random_model(rng, opt);
        const CylinderEvent a = random_event(rng);
        const CylinderEvent b = random_event(rng);
        const int gap = 3 * (model.max_profile_width() + 9) + 1;
        const std::pair<CylinderEvent, int> far[] = {{a, 0}, {b, gap}};
        CHECK(model.cylinder_joint_prob(far) ==
              doctest::Approx(model.event_prob(a) * model.event_prob(b))
                  .epsilon(1e-13));
        // order-3 factorization with pairwise gaps beyond the profile width
        const CylinderEvent c = random_event(rng);
        const std::pair<CylinderEvent, int> three[] = {{a, 0}, {b, gap}, {c, 2 * gap}};
        CHECK(model.cylinder_joint_prob(three) ==
              doctest::Approx(model.event_prob(a) * model.event_prob(b) *
                              model.event_prob(c))
                  .epsilon(1e-13));
    }
}

TEST_CASE("correlation sandwich at the exact-equality corners") {
    Rng rng(31337, 5);
    ModelOptions opt;
    opt.diagonal_allowed = false;
    for (int rep = 0; rep < 20; ++rep) {
        const MovingMaximaModel model = random_model(rng, opt);
        const CylinderEvent a = random_event(rng);
        const CylinderEvent b = random_event(rng);
        const int gap = 3 * (model.max_profile_width() + 9) + 1;
        const LebowitzReport far = model.lebowitz_check(a, b, gap);
        CHECK(far.lower_ok);
        CHECK(far.upper_ok);
        CHECK(std::abs(far.lower_slack) <= 1e-12);  // exact independence
    }
    for (int rep = 0; rep < 20; ++rep) {
        const MovingMaximaModel model = random_model(rng);
        const double level = -0.5 + rng.uniform() * 3.0;
        const CylinderEvent a{{{0, level}}};
        const LebowitzReport same = model.lebowitz_check(a, a, 0);
        CHECK(same.lower_ok);
        CHECK(same.upper_ok);
        // tau_a(0) equals -log P[A], so the upper bound collapses to P[A]
        CHECK(std::abs(same.upper_slack) <= 1e-12);
    }
}

TEST_CASE("correlation sandwich holds on randomized inputs") {
    Rng rng(4242, 11);
    for (int rep = 0; rep < 200; ++rep) {
        const MovingMaximaModel model = random_model(rng);
        const CylinderEvent a = random_event(rng);
        const CylinderEvent b = random_event(rng);
        for (int t = -6; t <= 6; ++t) {
            const LebowitzReport rep2 = model.lebowitz_check(a, b, t);
            CHECK(rep2.lower_ok);
            CHECK(rep2.upper_ok);
        }
    }
}

TEST_CASE("exact sampler matches the cylinder law") {
    const MovingMaximaModel model(
        {Profile{0.5, {{0, 1.0}, {1, 0.4}}}}, {{0.8, 0.3}});
    const int idx[] = {0, 1};
    const std::vector<double> y{0.9, 0.9};
    const double exact = model.finite_dim_measure(idx).cylinder_prob(y);
    Rng rng(5150, 99);
    const int n = 200000;
    int below = 0;
    for (int i = 0; i < n; ++i) {
        const std::vector<double> x = model.sample(idx, rng);
        if (x[0] <= y[0] && x[1] <= y[1]) ++below;
    }
    const double p_hat = static_cast<double>(below) / n;
    const double se = std::sqrt(exact * (1.0 - exact) / n);
    CHECK(std::abs(p_hat - exact) <= 4.0 * se);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(MovingMaximaModel({Profile{0.0, {{0, 1.0}}}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MovingMaximaModel({Profile{1.0, {}}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(MovingMaximaModel({Profile{1.0, {{0, 1.0}, {0, 2.0}}}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MovingMaximaModel({}, {{0.0, -1.0}}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(MovingMaximaModel({Profile{1.0, {{0, -inf}}}}, {}),
                    std::invalid_argument);
}

}  // TEST_SUITE
