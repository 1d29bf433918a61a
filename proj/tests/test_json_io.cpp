#include <doctest.h>

#include "ssdcore/json_io.hpp"

using namespace ssdcore;
using nlohmann::json;

TEST_CASE("coalition keys parse and render") {
    CHECK(io::parse_coalition_key("1,3", 3).mask == 0b101u);
    CHECK(io::parse_coalition_key("2", 3).mask == 0b010u);
    CHECK_THROWS(io::parse_coalition_key("3,1", 3));
    CHECK_THROWS(io::parse_coalition_key("0", 3));
    CHECK_THROWS(io::parse_coalition_key("4", 3));
    CHECK_THROWS(io::parse_coalition_key("", 3));
    CHECK_THROWS(io::parse_coalition_key("1,x", 3));
}

TEST_CASE("distribution round trip") {
    std::vector<Distribution> ds = {Distribution(Normal{1.5, 2.0}),
                                    Distribution(Uniform{-3, 4}),
                                    Distribution(Gamma{2.5, 1.3}),
                                    Distribution(DiscreteUniform{{-1, 0, 7}}),
                                    Distribution(AlphaCutUniform{-2, 6, 0.3})};
    for (const auto& d : ds) {
        json j = io::distribution_to_json(d);
        Distribution back = io::parse_distribution(j);
        CHECK(back.family() == d.family());
        CHECK(io::distribution_to_json(back) == j);
    }
    CHECK_THROWS(io::parse_distribution(json{{"family", "cauchy"}}));
    CHECK_THROWS(io::parse_distribution(json{{"family", "normal"}, {"mu", 1.0}}));
}

TEST_CASE("stochastic game round trip") {
    json j = {{"players", 2},
              {"family", "uniform"},
              {"coalitions",
               {{"1", {{"a", 0.0}, {"b", 2.0}}},
                {"2", {{"a", 0.0}, {"b", 2.0}}},
                {"1,2", {{"a", 1.0}, {"b", 5.0}}}}}};
    StochasticGame g = io::parse_stochastic_game(j);
    CHECK(g.players() == 2);
    CHECK(g.grand_dist().as<Uniform>().b == doctest::Approx(5.0));
    json j2 = io::stochastic_game_to_json(g);
    StochasticGame g2 = io::parse_stochastic_game(j2);
    CHECK(io::stochastic_game_to_json(g2) == j2);

    json missing = j;
    missing["coalitions"].erase("2");
    CHECK_THROWS_WITH_AS(io::parse_stochastic_game(missing),
                         doctest::Contains("missing coalition '2'"), std::invalid_argument);

    json bad_key = j;
    bad_key["coalitions"]["2,1"] = {{"a", 0.0}, {"b", 1.0}};
    CHECK_THROWS(io::parse_stochastic_game(bad_key));
}

TEST_CASE("classical game round trip") {
    json j = {{"players", 2}, {"values", {{"1", 1.0}, {"2", 2.0}, {"1,2", 4.0}}}};
    ClassicalGame g = io::parse_classical_game(j);
    CHECK(g.value({0b01}) == doctest::Approx(1.0));
    CHECK(g.grand_value() == doctest::Approx(4.0));
    CHECK(io::classical_game_to_json(g) == j);
}

TEST_CASE("allocation parsing") {
    auto r = io::parse_allocation(json{{"type", "r"}, {"r", {0.5, 0.5}}}, 2);
    CHECK(std::holds_alternative<RAllocation>(r));
    auto dr = io::parse_allocation(json{{"type", "dr"}, {"d", {1.0, 2.0}}, {"r", {0.5, 0.5}}}, 2);
    CHECK(std::holds_alternative<DRAllocation>(dr));
    auto ds = io::parse_allocation(
        json{{"type", "dr_signed"}, {"d", {11.0, -9.0}}, {"r", {0.95, 0.05}}}, 2);
    CHECK(std::holds_alternative<DRSignedAllocation>(ds));
    auto un = io::parse_allocation(
        json{{"type", "unstructured"}, {"mean", {1.0, 1.0}}, {"cov", {{1.0, 0.0}, {0.0, 1.0}}}},
        2);
    CHECK(std::holds_alternative<UnstructuredAllocation>(un));
    CHECK_THROWS(io::parse_allocation(json{{"type", "shapley"}}, 2));
    CHECK_THROWS(io::parse_allocation(json{{"type", "r"}, {"r", {0.5}}}, 2));
}

TEST_CASE("newsvendor parsing") {
    json j = {{"players", 2},
              {"p", 2.0},
              {"c", 1.0},
              {"demand",
               {{"1", {{"a", 0.0}, {"b", 10.0}}},
                {"2", {{"a", 0.0}, {"b", 10.0}}},
                {"1,2", {{"a", 2.0}, {"b", 18.0}}}}}};
    NewsvendorProblem prob = io::parse_newsvendor(j);
    CHECK(prob.demand[3].second == doctest::Approx(18.0));
    json bad = j;
    bad["c"] = 3.0;
    CHECK_THROWS(io::parse_newsvendor(bad));
}
