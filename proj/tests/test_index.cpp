#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bindex/index.hpp"

using namespace bindex;

namespace {

// Independent definitional scan: normalized derivatives computed by repeated
// coefficient-shift differentiation of the polynomial (no shared code with
// the CoeffTable route), then the least m such that every a*_p with
// |p| <= cap is dominated by the band-<=m maximum.  O(cap^4) comparisons.
int brute_force_index(const AnalyticFunction& poly, const WeightField& L,
                      const BidiscPoint& z0, int cap) {
    REQUIRE(poly.is_polynomial());
    auto derivative_at = [&](MultiIndex k) {
        // differentiate term by term, then evaluate monomials directly
        Complex acc{0.0, 0.0};
        for (const auto& t : poly.poly_terms()) {
            if (t.k.k1 < k.k1 || t.k.k2 < k.k2) continue;
            double f = 1.0;
            for (int i = 0; i < k.k1; ++i) f *= double(t.k.k1 - i);
            for (int i = 0; i < k.k2; ++i) f *= double(t.k.k2 - i);
            Complex m = t.c * f;
            for (int i = 0; i < t.k.k1 - k.k1; ++i) m *= z0.z1;
            for (int i = 0; i < t.k.k2 - k.k2; ++i) m *= z0.z2;
            acc += m;
        }
        return acc;
    };
    const double l1 = L.eval(0, z0), l2 = L.eval(1, z0);
    std::map<std::pair<int, int>, double> astar;
    for (int k1 = 0; k1 <= cap; ++k1)
        for (int k2 = 0; k2 + k1 <= cap; ++k2) {
            double fact = 1.0;
            for (int i = 2; i <= k1; ++i) fact *= i;
            for (int i = 2; i <= k2; ++i) fact *= i;
            astar[{k1, k2}] = std::abs(derivative_at({k1, k2})) /
                              (fact * std::pow(l1, k1) * std::pow(l2, k2));
        }
    for (int m = 0; m <= cap; ++m) {
        double band = 0.0;
        for (const auto& [k, v] : astar)
            if (k.first + k.second <= m) band = std::max(band, v);
        bool dominated = true;
        for (const auto& [k, v] : astar)
            if (v > band) dominated = false;
        if (dominated) return m;
    }
    return cap;
}

AnalyticFunction random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> keep(0, 2);
    std::vector<PolyTerm> terms;
    for (const auto& k : degree_enumerate(deg(rng)))
        if (keep(rng) > 0) terms.push_back({k, {u(rng), u(rng)}});
    auto f = AnalyticFunction::poly(std::move(terms));
    if (f.poly_degree() < 0) return AnalyticFunction::constant({1.0, 0.0});
    return f;
}

}  // namespace

TEST_CASE("local_index: constants have index zero") {
    auto L = WeightField::example_weight(2.0, 4.0);
    auto res = local_index(AnalyticFunction::constant(5.0), L, {{0.2, 0.1}, {0.3, 0.0}}, 6);
    REQUIRE(res.status == IndexStatus::Ok);
    CHECK(*res.n0 == 0);
    CHECK(res.argmax_index == MultiIndex{0, 0});
}

TEST_CASE("local_index: z1 against a constant weight") {
    auto res = local_index(AnalyticFunction::poly({{{1, 0}, 1.0}}),
                           WeightField::constant(2.0, 2.0, 2.0), {}, 4);
    REQUIRE(res.status == IndexStatus::Ok);
    CHECK(*res.n0 == 1);
    CHECK(res.argmax_index == MultiIndex{1, 0});
    CHECK(std::exp(res.dominating_value.log_abs) == doctest::Approx(0.5));
}

TEST_CASE("local_index: the worked example stays at zero on a 5x5 grid") {
    auto F = AnalyticFunction::exp_reciprocal();
    auto L = WeightField::example_weight(2.0, 4.0);  // sigma = 2*beta
    const double pts[] = {-0.9, -0.45, 0.0, 0.45, 0.9};
    for (double x : pts)
        for (double y : pts) {
            auto res = local_index(F, L, {{x, 0.0}, {y, 0.0}}, 12);
            REQUIRE(res.status == IndexStatus::Ok);
            CHECK(*res.n0 == 0);
        }
}

TEST_CASE("local_index matches the brute-force definitional scan") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    std::uniform_real_distribution<double> w(2.5, 10.0);
    const int cap = 8;
    for (int trial = 0; trial < 50; ++trial) {
        auto F = random_poly(rng, 6);
        auto L = WeightField::constant(2.0, w(rng), w(rng));
        BidiscPoint z0{{u(rng), u(rng)}, {u(rng), u(rng)}};
        auto res = local_index(F, L, z0, cap);
        REQUIRE(res.status == IndexStatus::Ok);
        CHECK(*res.n0 == brute_force_index(F, L, z0, cap));
    }
}

TEST_CASE("local_index: weight scaling is monotone") {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    std::uniform_real_distribution<double> cs(1.0, 6.0);
    for (int trial = 0; trial < 40; ++trial) {
        auto F = random_poly(rng, 5);
        auto L = WeightField::constant(2.0, cs(rng) + 2.0, cs(rng) + 2.0);
        BidiscPoint z0{{u(rng), 0.0}, {u(rng), u(rng)}};
        double c = cs(rng);  // >= 1
        auto base = local_index(F, L, z0, 8);
        auto scaled = local_index(F, L.scaled(c, c), z0, 8);
        REQUIRE(base.status == IndexStatus::Ok);
        REQUIRE(scaled.status == IndexStatus::Ok);
        CHECK(*scaled.n0 <= *base.n0);
    }
}

TEST_CASE("local_index: argmax invariant under scalar multiples of F") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    std::uniform_real_distribution<double> lam(-5.0, 5.0);
    for (int trial = 0; trial < 40; ++trial) {
        auto F = random_poly(rng, 5);
        double l = lam(rng);
        if (l == 0.0) l = 1.0;
        std::vector<PolyTerm> scaled_terms = F.poly_terms();
        for (auto& t : scaled_terms) t.c *= l;
        auto G = AnalyticFunction::poly(scaled_terms);
        auto L = WeightField::constant(2.0, 3.0, 4.0);
        BidiscPoint z0{{u(rng), u(rng)}, {u(rng), 0.0}};
        auto a = local_index(F, L, z0, 8);
        auto b = local_index(G, L, z0, 8);
        REQUIRE(a.status == IndexStatus::Ok);
        REQUIRE(b.status == IndexStatus::Ok);
        CHECK(*a.n0 == *b.n0);
        CHECK(a.argmax_index == b.argmax_index);
    }
}

TEST_CASE("index_profile: constants and a two-degree monomial") {
    auto L = WeightField::constant(2.0, 10.0, 10.0);
    {
        auto profile = index_profile(AnalyticFunction::constant({3.0, 1.0}), L,
                                     {0.3, 0.6}, 6, {2, 4, 1.0});
        CHECK(profile.sup_n0 == 0);
        for (const auto& lvl : profile.levels) CHECK(lvl.sup_n0 == 0);
    }
    {
        // single grid point at the origin: only a*_11 = 1/100 is nonzero
        auto profile = index_profile(AnalyticFunction::poly({{{1, 1}, 1.0}}), L,
                                     {0.1}, 4, {0, 1, 1.0});
        CHECK(profile.total_points == 1);
        CHECK(profile.sup_n0 == 2);
    }
}

TEST_CASE("index_profile: running sup is monotone") {
    std::mt19937 rng(31);
    auto F = random_poly(rng, 5);
    auto L = WeightField::constant(2.0, 5.0, 5.0);
    auto profile = index_profile(F, L, {0.3, 0.5, 0.7}, 8, {3, 4, 1.0});
    int prev = 0;
    for (const auto& lvl : profile.levels) {
        CHECK(lvl.running_sup >= prev);
        prev = lvl.running_sup;
    }
    CHECK(profile.sup_n0 == prev);
}

TEST_CASE("maximal_term examples") {
    {
        auto t = taylor_closed_form(AnalyticFunction::poly({{{2, 1}, 3.0}}), {}, 4);
        auto res = maximal_term(t, {0.5, 0.5});
        CHECK(res.mu.to_linear() == doctest::Approx(0.375));
        REQUIRE(res.nu_set.size() == 1);
        CHECK(res.nu_set[0] == MultiIndex{2, 1});
        CHECK(res.nu_norm == 3);
    }
    {
        auto t = taylor_closed_form(AnalyticFunction::rational_geom(), {}, 12);
        auto res = maximal_term(t, {0.5, 0.5});
        CHECK(res.mu.to_linear() == doctest::Approx(1.0));
        REQUIRE(res.nu_set.size() == 1);
        CHECK(res.nu_set[0] == MultiIndex{0, 0});
        CHECK(res.nu_norm == 0);
    }
    {
        // constructed tie: b00 = 1 and b10 = 2 both give |b| R^K = 1 at r1 = 1/2
        auto t = taylor_closed_form(
            AnalyticFunction::poly({{{0, 0}, 1.0}, {{1, 0}, 2.0}}), {}, 2);
        auto res = maximal_term(t, {0.5, 0.25});
        CHECK(res.mu.to_linear() == doctest::Approx(1.0));
        REQUIRE(res.nu_set.size() == 2);
        CHECK(res.nu_set[0] == MultiIndex{0, 0});
        CHECK(res.nu_set[1] == MultiIndex{1, 0});
        CHECK(res.nu_norm == 1);
    }
}

TEST_CASE("maximal_term agrees with a direct loop and grows with R") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> rr(0.1, 0.9);
    for (int trial = 0; trial < 100; ++trial) {
        auto F = random_poly(rng, 6);
        auto t = taylor_closed_form(F, {}, 6);
        Radii r{rr(rng), rr(rng)};
        auto res = maximal_term(t, r);

        double mu = 0.0;
        for (const auto& k : degree_enumerate(6))
            mu = std::max(mu, std::abs(t.coeff(k)) * std::pow(r.r1, k.k1) *
                                  std::pow(r.r2, k.k2));
        CHECK(res.mu.to_linear() == doctest::Approx(mu).epsilon(1e-12));

        Radii bigger{r.r1 * 1.5, r.r2 * 1.7};
        auto res2 = maximal_term(t, bigger);
        CHECK(res2.nu_norm >= res.nu_norm);
    }
}

TEST_CASE("max_modulus examples") {
    {
        auto res = max_modulus(AnalyticFunction::poly({{{1, 1}, 1.0}}), {}, {0.3, 0.4}, 32);
        CHECK(res.m == doctest::Approx(0.12));
    }
    {
        auto res = max_modulus(AnalyticFunction::exp_linear(1.0, 1.0), {}, {0.3, 0.4}, 32);
        CHECK(res.m == doctest::Approx(std::exp(0.7)));
        CHECK(res.argmax.z1.real() == doctest::Approx(0.3));
        CHECK(res.argmax.z2.real() == doctest::Approx(0.4));
    }
    {
        auto res = max_modulus(AnalyticFunction::reciprocal_product(2.0, 2.0), {},
                               {0.5, 0.5}, 32);
        CHECK(res.m == doctest::Approx(1.0 / 2.25));
        CHECK(res.argmax.z1.real() == doctest::Approx(0.5));
    }
}

TEST_CASE("max_modulus: refinement never decreases, samples never dominate") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> rr(0.1, 0.4);
    for (int trial = 0; trial < 30; ++trial) {
        auto F = random_poly(rng, 5);
        Radii r{rr(rng), rr(rng)};
        auto coarse = max_modulus(F, {}, r, 16);
        auto fine = max_modulus(F, {}, r, 32);
        CHECK(fine.log_m >= coarse.log_m);
        CHECK(coarse.log_m >= std::log(std::abs(F.eval(coarse.argmax))) - 1e-12);
    }
}

TEST_CASE("Cauchy bound: |b_K| R^K stays below the skeleton maximum") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> rr(0.1, 0.4);
    for (int trial = 0; trial < 50; ++trial) {
        auto F = random_poly(rng, 6);
        Radii r{rr(rng), rr(rng)};
        auto t = taylor_closed_form(F, {}, 6);
        auto M = max_modulus(F, {}, r, 256);
        const double lr1 = std::log(r.r1), lr2 = std::log(r.r2);
        for (const auto& k : degree_enumerate(6)) {
            double lhs = t.at(k).log_abs + k.k1 * lr1 + k.k2 * lr2;
            CHECK(lhs <= M.log_m + std::log1p(1e-9) + 1e-12);
        }
    }
}

TEST_CASE("q_constant formula values") {
    LambdaEstimate unit;
    unit.lambda1 = {1.0, 1.0};
    unit.lambda2 = {1.0, 1.0};
    CHECK(q_constant(0, {0.5, 0.5}, unit) == 3);

    LambdaEstimate spread;
    spread.lambda1 = {0.5, 0.5};
    spread.lambda2 = {2.0, 2.0};
    // 2*2*(1+1) * (0.5^-1 * 2^2)^2 = 8 * 64 = 512 -> floor + 1
    CHECK(q_constant(1, {1.0, 1.0}, spread) == 513);

    CHECK(q_constant(7, {0.0, 0.0}, unit) == 1);
}

TEST_CASE("skeleton and table preconditions throw") {
    auto F = AnalyticFunction::constant(1.0);
    CHECK_THROWS_AS(max_modulus(F, {{0.8, 0.0}, {}}, {0.3, 0.1}, 8), SkeletonOutsideDomain);
    auto t = taylor_closed_form(F, {}, 0);
    CHECK_THROWS_AS(maximal_term(t, {0.5, 0.5}), DomainViolation);
    CHECK_THROWS_AS(local_index(F, WeightField::constant(2.0, 1.0, 1.0), {}, 0),
                    DomainViolation);
}

TEST_CASE("q_constant rejects inconsistent lambda estimates") {
    LambdaEstimate bad;
    bad.lambda1 = {2.0, 1.0};
    bad.lambda2 = {1.0, 1.0};
    CHECK_THROWS_AS(q_constant(1, {1.0, 1.0}, bad), DomainViolation);
}
