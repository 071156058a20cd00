#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "ccfinder/configuration.hpp"
#include "ccfinder/family.hpp"

using namespace ccfinder;

namespace {

PlanarConfiguration random_config(std::mt19937& rng, int n = 6) {
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> mass(0.1, 10.0);
    while (true) {
        PlanarConfiguration c;
        for (int i = 0; i < n; ++i) {
            c.positions.push_back({pos(rng), pos(rng)});
            c.masses.push_back(mass(rng));
        }
        if (min_pairwise_distance(c) > 0.3) return c;
    }
}

} // namespace

TEST_CASE("center_of_mass matches weighted averages") {
    PlanarConfiguration two{{{-1.0, 0.0}, {1.0, 0.0}}, {1.0, 1.0}};
    CHECK(center_of_mass(two).x == 0.0);
    CHECK(center_of_mass(two).y == 0.0);

    // Point-symmetric family coordinates cancel exactly.
    const auto hex = build_configuration({1.0, std::numbers::sqrt3, 1.0});
    CHECK(center_of_mass(hex).x == 0.0);
    CHECK(center_of_mass(hex).y == 0.0);

    PlanarConfiguration uneven{{{0.0, 0.0}, {3.0, 0.0}}, {1.0, 2.0}};
    CHECK(center_of_mass(uneven).x == Catch::Approx(2.0).margin(1e-15));
    CHECK(center_of_mass(uneven).y == 0.0);
}

TEST_CASE("center_of_mass is translation equivariant") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_config(rng);
        const Vec2 v{shift(rng), shift(rng)};
        PlanarConfiguration moved = c;
        for (auto& q : moved.positions) q += v;
        const Vec2 before = center_of_mass(c);
        const Vec2 after = center_of_mass(moved);
        CHECK(after.x - v.x == Catch::Approx(before.x).margin(1e-12));
        CHECK(after.y - v.y == Catch::Approx(before.y).margin(1e-12));
    }
}

TEST_CASE("translate_to_cm centers and preserves geometry") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_config(rng);
        const auto centered = translate_to_cm(c);
        CHECK(center_of_mass(centered).norm() < 1e-14);
        CHECK(min_pairwise_distance(centered) ==
              Catch::Approx(min_pairwise_distance(c)).epsilon(1e-13));

        // Idempotent: centering twice moves nothing past rounding.
        const auto twice = translate_to_cm(centered);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(twice.positions[i].x == Catch::Approx(centered.positions[i].x).margin(1e-14));
            CHECK(twice.positions[i].y == Catch::Approx(centered.positions[i].y).margin(1e-14));
        }
    }
}

TEST_CASE("translate_to_cm is the identity on exactly centered input") {
    const auto hex = build_configuration({1.0, std::numbers::sqrt3, 1.0});
    const auto out = translate_to_cm(hex);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        CHECK(out.positions[i].x == hex.positions[i].x);
        CHECK(out.positions[i].y == hex.positions[i].y);
    }
}

TEST_CASE("translate_to_cm worked example") {
    PlanarConfiguration c{{{0.0, 0.0}, {3.0, 0.0}}, {1.0, 2.0}};
    const auto out = translate_to_cm(c);
    CHECK(out.positions[0].x == Catch::Approx(-2.0).margin(1e-15));
    CHECK(out.positions[1].x == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("min_pairwise_distance") {
    // Regular hexagon with circumradius 2: adjacent vertices at distance 2.
    const auto hex = build_configuration({1.0, std::numbers::sqrt3, 1.0});
    CHECK(min_pairwise_distance(hex) == Catch::Approx(2.0).margin(1e-14));

    PlanarConfiguration two{{{0.0, 0.0}, {0.0, 5.0}}, {1.0, 1.0}};
    CHECK(min_pairwise_distance(two) == 5.0);

    PlanarConfiguration line{{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}, {1.0, 1.0, 1.0}};
    CHECK(min_pairwise_distance(line) == 1.0);
}

TEST_CASE("configuration validation rejects bad input") {
    CHECK_THROWS_AS(validate(PlanarConfiguration{{{0.0, 0.0}}, {1.0}}), DomainError);
    CHECK_THROWS_AS(validate(PlanarConfiguration{{{0.0, 0.0}, {1.0, 0.0}}, {1.0}}),
                    DomainError);
    CHECK_THROWS_AS(
        validate(PlanarConfiguration{{{0.0, 0.0}, {1.0, 0.0}}, {1.0, -1.0}}),
        DomainError);
    CHECK_THROWS_AS(
        validate(PlanarConfiguration{{{1.0, 2.0}, {1.0, 2.0}}, {1.0, 1.0}}),
        CollisionError);

    PlanarConfiguration near{{{0.0, 0.0}, {1e-10, 0.0}}, {1.0, 1.0}};
    validate(near);  // distinct, structurally fine
    CHECK_THROWS_AS(require_no_collision(near), CollisionError);
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(build_configuration({0.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(build_configuration({1.0, -1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(build_configuration({1.0, 1.0, 0.0}), DomainError);
}
