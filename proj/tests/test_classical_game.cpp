#include <doctest.h>

#include <random>

#include "ssdcore/classical_game.hpp"
#include "support.hpp"

using namespace ssdcore;

namespace {

// Three players; value 3 on {1,2}, {2,3} and N, zero elsewhere.
ClassicalGame chain_game() {
    std::vector<double> v(8, 0.0);
    v[0b011] = 3.0;
    v[0b110] = 3.0;
    v[0b111] = 3.0;
    return ClassicalGame(3, std::move(v));
}

ClassicalGame mean_side_game() {
    auto g = chain_game();
    g.set_value(Coalition::singleton(0), 5.0);
    g.set_value(Coalition::singleton(1), 2.0);
    g.set_value(Coalition::singleton(2), 5.0);
    g.set_value(Coalition::full(3), 12.0);
    return g;
}

}  // namespace

TEST_CASE("coalition keys") {
    CHECK(Coalition{0b101}.key(3) == "1,3");
    CHECK(Coalition::full(3).key(3) == "1,2,3");
    CHECK(Coalition::singleton(1).key(3) == "2");
}

TEST_CASE("core membership") {
    auto g = chain_game();
    CHECK(core_membership(g, {0, 3, 0}, 1e-9));
    CHECK_FALSE(core_membership(g, {3, 0, 0}, 1e-9));
    auto add = ClassicalGame::additive({1, 2, 3});
    CHECK(core_membership(add, {1, 2, 3}, 1e-9));
    CHECK_THROWS_AS(core_membership(g, {1, 2}, 1e-9), DimensionMismatch);
}

TEST_CASE("core witnesses") {
    auto w = core_nonempty(mean_side_game());
    REQUIRE(w.has_value());
    CHECK((*w)[0] == doctest::Approx(5.0));
    CHECK((*w)[1] == doctest::Approx(2.0));
    CHECK((*w)[2] == doctest::Approx(5.0));

    ClassicalGame bad(2, {0, 1, 1, 1});
    CHECK_FALSE(core_nonempty(bad).has_value());

    auto add = ClassicalGame::additive({4, -1, 2});
    auto wa = core_nonempty(add);
    REQUIRE(wa.has_value());
    CHECK((*wa)[0] == doctest::Approx(4.0));
    CHECK((*wa)[1] == doctest::Approx(-1.0));
    CHECK((*wa)[2] == doctest::Approx(2.0));
}

TEST_CASE("cost core witnesses") {
    ClassicalGame g(2, {0, 0.6, 0.6, 1.0});
    auto w = cost_core_nonempty(g);
    REQUIRE(w.has_value());
    CHECK((*w)[0] + (*w)[1] == doctest::Approx(1.0));
    CHECK((*w)[0] <= 0.6 + 1e-9);
    CHECK((*w)[1] <= 0.6 + 1e-9);
    CHECK((*w)[0] >= -1e-9);

    ClassicalGame tight(2, {0, 0.4, 0.4, 1.0});
    CHECK_FALSE(cost_core_nonempty(tight).has_value());

    ClassicalGame one(1, {0, 1.0});
    auto w1 = cost_core_nonempty(one);
    REQUIRE(w1.has_value());
    CHECK((*w1)[0] == doctest::Approx(1.0));
}

TEST_CASE("core minimum coordinate") {
    CHECK(core_min_coordinate(chain_game(), 1) == doctest::Approx(3.0));
    auto add = ClassicalGame::additive({2, 7});
    CHECK(core_min_coordinate(add, 1) == doctest::Approx(7.0));
    ClassicalGame g(2, {0, 0, 0, 2});
    CHECK(core_min_coordinate(g, 0) == doctest::Approx(0.0));
    ClassicalGame empty(2, {0, 1, 1, 1});
    CHECK_THROWS_AS(core_min_coordinate(empty, 0), EmptyCore);
}

TEST_CASE("structure predicates") {
    CHECK_FALSE(chain_game().is_convex());
    CHECK(chain_game().is_superadditive());
    CHECK(ClassicalGame::additive({1, 2, 3}).is_convex());
    CHECK(ClassicalGame::additive({1, 2, 3}).is_superadditive());
    ClassicalGame sub(2, {0, 1, 1, 1});
    CHECK_FALSE(sub.is_superadditive());
    // |S|^2 is supermodular.
    std::vector<double> sq(16);
    for (std::uint32_t m = 0; m < 16; ++m) {
        int s = __builtin_popcount(m);
        sq[m] = s * s;
    }
    CHECK(ClassicalGame(4, std::move(sq)).is_convex());
}

TEST_CASE("additive shifts translate the core") {
    auto g = chain_game();
    PayoffVector r = {5.0 / 12, 2.0 / 12, 5.0 / 12};
    auto shifted = g.shift_by_additive(r, 9.0);
    CHECK(shifted.value({0b011}) == doctest::Approx(3.0 + 9.0 * 7.0 / 12));

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        auto game = testsupport::random_game(n, -2.0, 4.0, rng);
        PayoffVector rv(n);
        for (auto& x : rv) x = u(rng);
        double k = u(rng);
        auto moved = game.shift_by_additive(rv, k);
        auto w = core_nonempty(game);
        if (!w) continue;
        PayoffVector y = *w;
        for (int i = 0; i < n; ++i) y[i] += k * rv[i];
        CHECK(core_membership(moved, y, 1e-7));
    }
}

TEST_CASE("convex games are balanced") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto g = testsupport::random_convex_game(n, rng);
        REQUIRE(g.is_convex());
        auto w = core_nonempty(g);
        REQUIRE(w.has_value());
        CHECK(core_membership(g, *w, 1e-7));
    }
}

TEST_CASE("core minimum respects singleton values") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        auto g = testsupport::random_game(n, 0.0, 3.0, rng);
        auto w = core_nonempty(g);
        if (!w) continue;
        for (int i = 0; i < n; ++i)
            CHECK(core_min_coordinate(g, i) >= g.value(Coalition::singleton(i)) - 1e-7);
    }
}
