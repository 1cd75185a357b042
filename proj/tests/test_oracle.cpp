#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "secrelay/oracle.hpp"
#include "secrelay/solver.hpp"
#include "test_support.hpp"

using namespace secrelay;

TEST_CASE("grid search finds a user sitting on a grid point") {
    ChannelParams params = testing::default_params();
    Scenario s;
    s.R = 10.0;
    s.H = 20.0;
    s.cluster_center = {{0.0, 0.0}};
    s.users = {{{5.0, 5.0, 0.0}}}; // on the 101-point grid of [-10, 10]
    s.eavesdroppers = {{500.0, 0.0, 0.0}};
    PowerMatrix powers = uniform_powers(1, 1, 0.1);
    PositionSearchResult best = grid_search_position(s, powers, params, 0, GridSpec{101, 2});
    CHECK(best.x == Catch::Approx(5.0).margin(1e-9));
    CHECK(best.y == Catch::Approx(5.0).margin(1e-9));
}

TEST_CASE("disk excluding the centroid: boundary point nearest the centroid wins") {
    DiskConstraint disk{{0.0, 0.0}, 5.0};
    GridSpec grid{201, 2};
    // concave quadratic peaked at (20, 0), outside the disk
    auto objective = [](double x, double y) {
        return -((x - 20.0) * (x - 20.0) + y * y);
    };
    PositionSearchResult best = grid_search_position_objective(disk, grid, objective);
    const double cell = 2.0 * disk.radius / (grid.position_resolution - 1);
    CHECK(std::hypot(best.x - 5.0, best.y - 0.0) <= cell * std::sqrt(2.0) + 1e-9);
}

TEST_CASE("joint grid search cost guard rejects oversized instances") {
    Scenario s = testing::random_scenario(2, 4, 3, 10);
    bool big = s.num_users() > 2 || s.num_eavesdroppers() > 2 || s.num_slots() > 2;
    if (!big) {
        s.users.push_back(s.users[0]);
        s.users.push_back(s.users[0]);
    }
    CHECK_THROWS_AS(grid_search_joint(s, testing::default_params(),
                                      testing::default_constraints(), GridSpec{}),
                    std::invalid_argument);
}

TEST_CASE("zero peak power yields an all-zero optimum") {
    Scenario s = testing::random_scenario(6, 1, 1, 1);
    // p_max must stay positive for a valid constraint set; use a vanishing one
    PowerConstraints tiny{1e-300, 1e-300};
    JointSearchResult r =
        grid_search_joint(s, testing::default_params(), tiny, GridSpec{21, 3});
    CHECK(r.objective_p1 == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("eavesdropper on top of the user: optimum is zero power") {
    ChannelParams unit = ChannelParams::from_lambda0(1.0);
    Scenario s;
    s.R = 5.0;
    s.H = 10.0;
    s.cluster_center = {{0.0, 0.0}};
    s.users = {{{0.0, 0.0, 0.0}}};
    s.eavesdroppers = {{0.0, 0.0, 0.0}}; // clamped at d_min: eta = lambda0
    JointSearchResult r =
        grid_search_joint(s, unit, PowerConstraints{0.1, 0.2}, GridSpec{41, 41});
    CHECK(r.objective_p1 == Catch::Approx(0.0).margin(1e-12));
    for (double p : r.powers[0]) CHECK(p == 0.0);
}

TEST_CASE("N=1 M=1: solver matches the joint grid oracle") {
    ChannelParams params = testing::default_params();
    PowerConstraints constraints = testing::default_constraints();
    for (std::uint64_t seed = 50; seed < 55; ++seed) {
        Scenario s = testing::random_scenario(seed, 1, 1, 1);
        JointSearchResult oracle =
            grid_search_joint(s, params, constraints, GridSpec{101, 201});
        SolveResult solved = run_algorithm1(s, params, constraints);
        if (oracle.objective_p1 <= 0.0) {
            CHECK(solved.p1_objective <= 1e-9);
        } else {
            CHECK(solved.p1_objective >= 0.98 * oracle.objective_p1);
        }
    }
}
