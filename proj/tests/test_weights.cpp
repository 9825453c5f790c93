#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bindex/weights.hpp"

using namespace bindex;

namespace {
const double kBeta = 2.0;
}

TEST_CASE("validate_weight: strongly admissible boundary_power passes everywhere") {
    // l1 = 2*beta/((1-|z1|)(1-|z2|)): l1*(1-|z1|) = 2*beta/(1-|z2|) >= 2*beta > beta
    auto L = WeightField::boundary_power(kBeta, {{{1.0, 1.0}, {1.0, 1.0}}}, 2.0 * kBeta);
    auto rep = validate_weight(L, {{4, 8, 0.95}, {4, 8, 0.95}});
    CHECK(rep.admissible_fraction == 1.0);
    CHECK(rep.worst_margin > 0.0);
}

TEST_CASE("validate_weight: small constant fails near the origin") {
    double c = 1.5;  // < beta
    auto L = WeightField::constant(kBeta, c, c);
    auto rep = validate_weight(L, {{2, 4, 1e-9}, {2, 4, 1e-9}});
    CHECK(rep.admissible_fraction < 1.0);
    CHECK(rep.worst_margin == doctest::Approx(c - kBeta).epsilon(1e-7));
}

TEST_CASE("validate_weight: the example weight misses admissibility at the origin") {
    auto L = WeightField::example_weight(kBeta, 1.0);
    auto rep = validate_weight(L, {{3, 8, 0.9}, {3, 8, 0.9}});
    // l1(0)*(1-0) = 1 < beta, and the margin is smallest exactly at z = 0
    CHECK(rep.worst_margin == doctest::Approx(1.0 - kBeta));
    CHECK(std::abs(rep.worst_point.z1) == doctest::Approx(0.0));
    CHECK(std::abs(rep.worst_point.z2) == doctest::Approx(0.0));
    // the rescaled variant passes
    auto rep2 = validate_weight(WeightField::example_weight(kBeta, 2.0 * kBeta),
                                {{3, 8, 0.9}, {3, 8, 0.9}});
    CHECK(rep2.admissible_fraction == 1.0);
}

TEST_CASE("lambda_bounds reproduces the closed form for l1 = beta/(1-|z1|)") {
    // optimizing (1-|z1^0|)/(1-|z1|) over |z1-z1^0| <= r1(1-|z1^0|)/beta gives
    // lambda1 = beta/(beta+r1), lambda2 = beta/(beta-r1)
    auto L = WeightField::boundary_power(kBeta, {{{1.0, 0.0}, {0.0, 1.0}}}, kBeta);
    Radii r{1.0, 1.0};
    auto est = lambda_bounds(L, r, default_lambda_outer(), default_lambda_inner());
    CHECK(est.lambda1[0] == doctest::Approx(kBeta / (kBeta + r.r1)).epsilon(1e-2));
    CHECK(est.lambda2[0] == doctest::Approx(kBeta / (kBeta - r.r1)).epsilon(1e-2));

    auto refined = lambda_bounds(L, r, default_lambda_outer().doubled(),
                                 default_lambda_inner().doubled());
    CHECK(refined.lambda1[0] == doctest::Approx(kBeta / (kBeta + r.r1)).epsilon(1e-3));
    CHECK(refined.lambda2[0] == doctest::Approx(kBeta / (kBeta - r.r1)).epsilon(1e-3));
}

TEST_CASE("lambda_bounds: constant weights give lambda = 1 exactly") {
    auto L = WeightField::constant(kBeta, 3.0, 5.0);
    // polydisc radius per coordinate is r_j/c_j <= 1/3; keep the outer grid
    // far enough from the boundary that nothing protrudes
    BidiscGrid outer{{3, 6, 0.6}, {3, 6, 0.6}};
    auto est = lambda_bounds(L, {1.0, 0.5}, outer, default_lambda_inner());
    CHECK(est.lambda1[0] == 1.0);
    CHECK(est.lambda1[1] == 1.0);
    CHECK(est.lambda2[0] == 1.0);
    CHECK(est.lambda2[1] == 1.0);
    CHECK(est.q2_consistent);

    // with outer samples near the boundary the same weight is inadmissible:
    // the polydisc protrudes, samples are clipped and the estimate is flagged
    auto flagged = lambda_bounds(L, {1.0, 0.5}, default_lambda_outer(),
                                 default_lambda_inner());
    CHECK(flagged.clipped > 0);
    CHECK_FALSE(flagged.q2_consistent);
}

TEST_CASE("lambda_bounds: r -> 0 limit approaches 1 for continuous weights") {
    auto L = WeightField::example_weight(kBeta, 2.0 * kBeta);
    auto est = lambda_bounds(L, {1e-3, 1e-3}, default_lambda_outer(), default_lambda_inner());
    for (int j = 0; j < 2; ++j) {
        CHECK(est.lambda1[j] == doctest::Approx(1.0).epsilon(1e-2));
        CHECK(est.lambda2[j] == doctest::Approx(1.0).epsilon(1e-2));
    }
}

TEST_CASE("lambda_bounds: center sample forces lambda1 <= 1 <= lambda2") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng);
        auto L = WeightField::custom(
            kBeta,
            [=](const BidiscPoint& z) {
                return a + b * std::norm(z.z1) + c * std::norm(z.z2);
            },
            [=](const BidiscPoint& z) {
                return c + a * std::abs(z.z1) + b * std::abs(z.z2);
            });
        auto est = lambda_bounds(L, {u(rng), u(rng)}, {{2, 4, 0.8}, {2, 4, 0.8}}, {3, 6, 1.0});
        for (int j = 0; j < 2; ++j) {
            CHECK(est.lambda1[j] <= 1.0);
            CHECK(est.lambda2[j] >= 1.0);
        }
    }
}

TEST_CASE("lambda_bounds: grid refinement is monotone") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0.3, 2.5);
    for (int trial = 0; trial < 10; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng);
        auto L = WeightField::custom(
            kBeta,
            [=](const BidiscPoint& z) { return a + std::abs(z.z1) + b * std::norm(z.z2); },
            [=](const BidiscPoint& z) { return c + std::norm(z.z1 - Complex{0.3, 0.0}); });
        BidiscGrid outer{{2, 4, 0.7}, {2, 4, 0.7}};
        DiscGrid inner{3, 4, 1.0};
        Radii r{u(rng) / 2.0, u(rng) / 2.0};
        auto coarse = lambda_bounds(L, r, outer, inner);
        auto fine = lambda_bounds(L, r, outer.doubled(), inner.doubled());
        for (int j = 0; j < 2; ++j) {
            CHECK(fine.lambda1[j] <= coarse.lambda1[j]);
            CHECK(fine.lambda2[j] >= coarse.lambda2[j]);
        }
    }
}

TEST_CASE("lambda_bounds_interval reports the refinement movement") {
    auto L = WeightField::boundary_power(kBeta, {{{1.0, 0.0}, {0.0, 1.0}}}, kBeta);
    auto est = lambda_bounds_interval(L, {1.0, 1.0}, {{2, 4, 0.9}, {2, 4, 0.9}},
                                      {4, 8, 1.0});
    CHECK(est.has_delta);
    // anchored sampling pins the extremes exactly, so doubling moves nothing
    CHECK(est.delta1[0] <= 1e-12);
    CHECK(est.delta2[0] <= 1e-12);
    CHECK(est.lambda1[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("a throwing custom weight surfaces as EvaluatorFailure") {
    auto L = WeightField::custom(
        kBeta, [](const BidiscPoint&) -> double { throw std::runtime_error("boom"); },
        [](const BidiscPoint&) { return 1.0; });
    CHECK_THROWS(validate_weight(L, {{1, 2, 0.5}, {1, 2, 0.5}}));

    auto nonpositive = WeightField::custom(
        kBeta, [](const BidiscPoint&) { return 0.0; },
        [](const BidiscPoint&) { return 1.0; });
    CHECK_THROWS_AS(validate_weight(nonpositive, {{1, 2, 0.5}, {1, 2, 0.5}}),
                    EvaluatorFailure);
}

TEST_CASE("lambda_bounds rejects degenerate radii") {
    auto L = WeightField::constant(kBeta, 3.0, 3.0);
    CHECK_THROWS_AS(lambda_bounds(L, {0.0, 1.0}, default_lambda_outer(), default_lambda_inner()),
                    DegenerateRadius);
    CHECK_THROWS_AS(lambda_bounds(L, {1.0, kBeta + 0.1}, default_lambda_outer(),
                                  default_lambda_inner()),
                    DomainViolation);
}

TEST_CASE("comparability: identity and constant multiples") {
    auto L = WeightField::example_weight(kBeta, 2.0 * kBeta);
    BidiscGrid grid{{2, 4, 0.9}, {2, 4, 0.9}};

    auto idw = comparability(L, L, grid);
    CHECK(idw.verdict == Comparability::Comparable);
    CHECK(idw.theta_low[0] == 1.0);
    CHECK(idw.theta_high[0] == 1.0);
    CHECK(idw.theta_low[1] == 1.0);
    CHECK(idw.theta_high[1] == 1.0);

    // L = 2*Ltilde componentwise: theta = (2,2); doubling is exact in binary
    auto twice = comparability(L.scaled(2.0, 2.0), L, grid);
    CHECK(twice.verdict == Comparability::Comparable);
    CHECK(twice.theta_low[0] == 2.0);
    CHECK(twice.theta_high[0] == 2.0);
    CHECK(twice.theta_low[1] == 2.0);
    CHECK(twice.theta_high[1] == 2.0);
}

TEST_CASE("comparability: c*L against L returns exactly (c, c) for unit constants") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    BidiscGrid grid{{2, 4, 0.9}, {2, 4, 0.9}};
    auto L = WeightField::constant(kBeta, 1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double c = u(rng);
        auto w = comparability(L.scaled(c, c), L, grid);
        CHECK(w.theta_low[0] == c);
        CHECK(w.theta_high[0] == c);
        CHECK(w.theta_low[1] == c);
        CHECK(w.theta_high[1] == c);
        CHECK(w.verdict == Comparability::Comparable);
    }
}

TEST_CASE("comparability flags boundary-divergent ratios") {
    // l1 = beta/(1-|z1|) against ltilde1 = beta/(1-|z1|)^2: ratio (1-|z1|) -> 0
    auto L = WeightField::boundary_power(kBeta, {{{1.0, 0.0}, {0.0, 1.0}}}, kBeta);
    auto Lt = WeightField::boundary_power(kBeta, {{{2.0, 0.0}, {0.0, 2.0}}}, kBeta);
    auto w = comparability(L, Lt, {{2, 4, 0.9}, {2, 4, 0.9}});
    CHECK(w.verdict == Comparability::NotComparable);
    CHECK(w.finest_spread > 1e6);
}

TEST_CASE("scaled_weight examples") {
    auto L = WeightField::example_weight(kBeta, 2.0 * kBeta);
    BidiscPoint z{{0.3, 0.1}, {-0.2, 0.4}};

    // R = (beta,beta) is the identity scale
    auto same = scaled_weight(L, {kBeta, kBeta});
    CHECK(same.eval(0, z) == doctest::Approx(L.eval(0, z)).epsilon(1e-14));
    CHECK(same.eval(1, z) == doctest::Approx(L.eval(1, z)).epsilon(1e-14));

    auto C = WeightField::constant(kBeta, 3.0, 7.0);
    auto scaled = scaled_weight(C, {kBeta / 2.0, kBeta});
    CHECK(scaled.eval(0, z) == doctest::Approx(6.0));
    CHECK(scaled.eval(1, z) == doctest::Approx(7.0));

    // applying with R then (beta,beta) equals applying once with R
    auto twice = scaled_weight(scaled_weight(C, {1.0, 0.5}), {kBeta, kBeta});
    auto once = scaled_weight(C, {1.0, 0.5});
    CHECK(twice.eval(0, z) == doctest::Approx(once.eval(0, z)).epsilon(1e-14));
    CHECK(twice.eval(1, z) == doctest::Approx(once.eval(1, z)).epsilon(1e-14));
}

TEST_CASE("scaled_weight matches beta/r_j times L pointwise") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    auto L = WeightField::example_weight(kBeta, 2.0 * kBeta);
    for (int trial = 0; trial < 200; ++trial) {
        Radii r{u(rng) * kBeta, u(rng) * kBeta};
        BidiscPoint z{{0.8 * u(rng), 0.3 * u(rng)}, {-0.5 * u(rng), 0.2 * u(rng)}};
        auto S = scaled_weight(L, r);
        CHECK(S.eval(0, z) ==
              doctest::Approx(kBeta / r.r1 * L.eval(0, z)).epsilon(1e-14));
        CHECK(S.eval(1, z) ==
              doctest::Approx(kBeta / r.r2 * L.eval(1, z)).epsilon(1e-14));
    }
}
