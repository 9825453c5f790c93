#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "bindex/io.hpp"

using namespace bindex;

TEST_CASE("function spec parsing") {
    auto f1 = parse_function_spec(R"({"family": "exp_reciprocal"})");
    CHECK(f1.family() == Family::ExpReciprocal);

    auto f2 = parse_function_spec(
        R"({"family": "poly", "coeffs": [[0,0,1,0],[1,1,2,-0.5]]})");
    CHECK(f2.is_polynomial());
    CHECK(f2.poly_degree() == 2);
    CHECK(std::abs(f2.eval({{0.5, 0.0}, {0.5, 0.0}}) - Complex{1.5, -0.125}) < 1e-15);

    auto f3 = parse_function_spec(R"({"family": "rational_geom"})");
    CHECK(std::abs(f3.eval({{0.4, 0.0}, {0.4, 0.0}}) - 1.0 / 0.84) < 1e-15);

    CHECK_THROWS_AS(parse_function_spec("{}"), SpecParseError);
    CHECK_THROWS_AS(parse_function_spec(R"({"family": "no_such"})"), SpecParseError);
    CHECK_THROWS_AS(parse_function_spec("not json"), SpecParseError);
    CHECK_THROWS_AS(parse_function_spec(R"({"family":"poly","coeffs":[[0,0,1]]})"),
                    SpecParseError);
}

TEST_CASE("weight spec parsing") {
    auto w1 = parse_weight_spec(
        R"({"family": "boundary_power", "beta": 2.0, "exponents": [[2,1],[1,2]], "scale": 4.0})");
    CHECK(w1.family() == WeightFamily::BoundaryPower);
    CHECK(w1.beta() == 2.0);
    BidiscPoint z{{0.5, 0.0}, {0.0, 0.0}};
    CHECK(w1.eval(0, z) == doctest::Approx(4.0 / 0.25));

    auto w2 = parse_weight_spec(R"({"family": "constant", "values": [3.0, 5.0]})");
    CHECK(w2.eval(0, z) == 3.0);
    CHECK(w2.eval(1, z) == 5.0);
    CHECK(w2.beta() == 2.0);  // default

    CHECK_THROWS_AS(parse_weight_spec(R"({"family": "constant"})"), SpecParseError);
    CHECK_THROWS_AS(parse_weight_spec(R"({"family": "boundary_power", "beta": 2.0})"),
                    SpecParseError);
}

TEST_CASE("format_double survives a parse round-trip") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> expo(-300.0, 300.0);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        double x = mant(rng) * std::pow(10.0, expo(rng));
        double back = std::strtod(format_double(x).c_str(), nullptr);
        CHECK(back == x);
    }
    CHECK(format_double(kNegInf) == "-inf");
}

TEST_CASE("report JSON is deterministic and well-formed") {
    CriterionReport rep;
    rep.theorem_id = TheoremId::Hayman;
    rep.verdict = Verdict::Holds;
    rep.witness["c_min"] = 0.125;
    rep.witness["a"] = 3.0;
    rep.sampling["grid_points"] = 4;
    rep.worst_point = BidiscPoint{{0.1, -0.2}, {0.3, 0.0}};
    std::string a = report_to_json(rep);
    std::string b = report_to_json(rep);
    CHECK(a == b);
    CHECK(a ==
          R"({"theorem_id":"hayman","verdict":"holds","witness":{"a":3,"c_min":0.125},)"
          R"("sampling":{"grid_points":4},"worst_point":[0.10000000000000001,-0.20000000000000001,0.29999999999999999,0]})");
}

TEST_CASE("coefficient CSV round-trips into identical local-index results") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PolyTerm> terms;
        for (const auto& k : degree_enumerate(4)) terms.push_back({k, {u(rng), u(rng)}});
        auto F = AnalyticFunction::poly(terms);
        auto L = WeightField::constant(2.0, 3.0, 4.0);
        auto table = taylor_closed_form(F, {}, 6);

        std::stringstream buf;
        dump_coeff_csv(table, buf);
        auto G = load_poly_csv(buf);

        auto a = local_index(F, L, {}, 6);
        auto b = local_index(G, L, {}, 6);
        REQUIRE(a.status == IndexStatus::Ok);
        REQUIRE(b.status == IndexStatus::Ok);
        CHECK(*a.n0 == *b.n0);
        CHECK(a.argmax_index == b.argmax_index);
    }
}

TEST_CASE("coeff table to poly JSON round-trip") {
    auto F = AnalyticFunction::poly({{{0, 0}, {1.0, 0.5}}, {{2, 1}, {-0.25, 0.125}}});
    auto table = taylor_closed_form(F, {}, 4);
    auto G = parse_function_spec(coeff_table_to_poly_json(table));
    BidiscPoint z{{0.3, 0.2}, {-0.4, 0.1}};
    CHECK(std::abs(F.eval(z) - G.eval(z)) < 1e-15);
}

TEST_CASE("profile CSV carries the expected columns") {
    auto profile = index_profile(AnalyticFunction::constant(2.0),
                                 WeightField::constant(2.0, 3.0, 3.0), {0.5}, 4,
                                 {1, 2, 1.0});
    std::ostringstream os;
    dump_profile_csv(profile, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "re(z1),im(z1),re(z2),im(z2),n0,argmax_j1,argmax_j2,slack");
    std::string row;
    std::size_t rows = 0;
    while (std::getline(is, row))
        if (!row.empty()) ++rows;
    CHECK(rows == profile.total_points);
}
