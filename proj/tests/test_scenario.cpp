#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "secrelay/scenario.hpp"
#include "test_support.hpp"

using namespace secrelay;

TEST_CASE("zero-radius cluster puts the single user at the center every slot") {
    ScenarioConfig config;
    config.num_users = 1;
    config.num_slots = 4;
    config.cluster_radius = 0.0;
    config.cluster_start = {3.0, -2.0, 0.0};
    config.cluster_velocity = {1.0, 0.5};
    Scenario s = generate_scenario(config);
    for (int n = 0; n < 4; ++n) {
        CHECK(s.users[0][n].x == Catch::Approx(s.cluster_center[n][0]).margin(1e-12));
        CHECK(s.users[0][n].y == Catch::Approx(s.cluster_center[n][1]).margin(1e-12));
        CHECK(s.cluster_center[n][0] == Catch::Approx(3.0 + n * 1.0));
        CHECK(s.cluster_center[n][1] == Catch::Approx(-2.0 + n * 0.5));
    }
}

TEST_CASE("same config and seed gives bit-identical scenarios") {
    ScenarioConfig config;
    config.num_users = 3;
    config.num_eavesdroppers = 2;
    config.num_slots = 5;
    config.rng_seed = 42;
    Scenario a = generate_scenario(config);
    Scenario b = generate_scenario(config);
    for (int i = 0; i < 3; ++i)
        for (int n = 0; n < 5; ++n) {
            CHECK(a.users[i][n].x == b.users[i][n].x);
            CHECK(a.users[i][n].y == b.users[i][n].y);
        }
    for (int j = 0; j < 2; ++j) {
        CHECK(a.eavesdroppers[j].x == b.eavesdroppers[j].x);
        CHECK(a.eavesdroppers[j].y == b.eavesdroppers[j].y);
    }
}

TEST_CASE("generated users stay within the cluster radius") {
    ScenarioConfig config;
    config.num_users = 3;
    config.num_eavesdroppers = 2;
    config.num_slots = 5;
    config.cluster_radius = 50.0;
    config.cluster_velocity = {7.0, -3.0};
    config.rng_seed = 42;
    Scenario s = generate_scenario(config);
    for (int i = 0; i < 3; ++i)
        for (int n = 0; n < 5; ++n) {
            const double dx = s.users[i][n].x - s.cluster_center[n][0];
            const double dy = s.users[i][n].y - s.cluster_center[n][1];
            CHECK(std::sqrt(dx * dx + dy * dy) <= 50.0 + 1e-12);
        }
}

TEST_CASE("eavesdroppers are static and at the configured height") {
    Scenario s = testing::random_scenario(7);
    for (const auto& e : s.eavesdroppers) CHECK(e.z == 0.0);
}

TEST_CASE("validate_scenario flags structural problems") {
    Scenario s = testing::random_scenario(3);
    CHECK(validate_scenario(s).empty());

    Scenario no_eaves = s;
    no_eaves.eavesdroppers.clear();
    auto errors = validate_scenario(no_eaves);
    REQUIRE_FALSE(errors.empty());
    CHECK(errors.front().find("no eavesdroppers") != std::string::npos);

    Scenario nan_coord = s;
    nan_coord.users[0][0].x = std::nan("");
    errors = validate_scenario(nan_coord);
    REQUIRE_FALSE(errors.empty());
    CHECK(errors.front().find("user 0") != std::string::npos);
    CHECK(errors.front().find("slot 0") != std::string::npos);
}

TEST_CASE("invalid configs are rejected") {
    ScenarioConfig config;
    config.num_users = 0;
    CHECK_THROWS_AS(generate_scenario(config), std::invalid_argument);

    ScenarioConfig low_uav;
    low_uav.uav_altitude = 0.0;
    CHECK_THROWS_AS(generate_scenario(low_uav), std::invalid_argument);
}

TEST_CASE("scenario JSON round trip preserves geometry") {
    Scenario s = testing::random_scenario(11);
    Scenario back = scenario_from_json(scenario_to_json(s));
    REQUIRE(back.num_users() == s.num_users());
    REQUIRE(back.num_slots() == s.num_slots());
    CHECK(back.R == s.R);
    CHECK(back.H == s.H);
    for (int i = 0; i < s.num_users(); ++i)
        for (int n = 0; n < s.num_slots(); ++n) {
            CHECK(back.users[i][n].x == s.users[i][n].x);
            CHECK(back.users[i][n].y == s.users[i][n].y);
            CHECK(back.users[i][n].z == s.users[i][n].z);
        }
}
