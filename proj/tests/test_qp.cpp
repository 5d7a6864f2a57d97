#include <cmath>

#include "doctest.h"
#include "hcbf/qp.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace hcbf;
using hcbf::testing::Rng;

TEST_CASE("unconstrained desired control is returned as-is") {
    const QpSolution sol = solve_ball_qp(Mat2::identity(), {0.3, -0.4}, 2.0, {});
    REQUIRE(sol.feasible);
    CHECK(sol.u.x == 0.3);
    CHECK(sol.u.y == -0.4);
    CHECK(sol.objective == 0.0);
}

TEST_CASE("single halfplane: Euclidean projection with identity weight") {
    const AffineConstraint cons[] = {{{1.0, 0.0}, 0.0}};  // u_x >= 0
    const QpSolution sol = solve_ball_qp(Mat2::identity(), {-1.0, 0.3}, 2.0, cons);
    REQUIRE(sol.feasible);
    CHECK(sol.u.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.u.y == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("desired control outside the ball is pulled to the circle") {
    const QpSolution sol = solve_ball_qp(Mat2::identity(), {3.0, 4.0}, 1.0, {});
    REQUIRE(sol.feasible);
    CHECK(norm(sol.u) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.u.x == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(sol.u.y == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("u-independent constraints") {
    const AffineConstraint vacuous[] = {{{0.0, 0.0}, 0.5}};
    CHECK(solve_ball_qp(Mat2::identity(), {0, 0}, 1.0, vacuous).feasible);
    const AffineConstraint impossible[] = {{{0.0, 0.0}, -0.5}};
    CHECK_FALSE(solve_ball_qp(Mat2::identity(), {0, 0}, 1.0, impossible).feasible);
}

TEST_CASE("opposing halfplanes with no overlap are infeasible") {
    const AffineConstraint cons[] = {{{1.0, 0.0}, -0.6}, {{-1.0, 0.0}, -0.6}};
    // u_x >= 0.6 and u_x <= -0.6 cannot both hold.
    CHECK_FALSE(solve_ball_qp(Mat2::identity(), {0, 0}, 1.0, cons).feasible);
}

TEST_CASE("halfplane outside the ball is infeasible") {
    const AffineConstraint cons[] = {{{1.0, 0.0}, -2.0}};  // u_x >= 2 with u_max = 1
    CHECK_FALSE(solve_ball_qp(Mat2::identity(), {0, 0}, 1.0, cons).feasible);
}

TEST_CASE("row-wise grid oracle agrees with the naive scan") {
    Rng rng(0x9999);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = testing::random_qp_instance(rng.next_u64());
        const auto fast =
            testing::qp_grid_rowwise(inst.q, inst.u_des, inst.u_max, inst.cons, 201);
        const auto naive =
            testing::qp_grid_naive(inst.q, inst.u_des, inst.u_max, inst.cons, 201);
        REQUIRE(fast.feasible == naive.feasible);
        if (fast.feasible) {
            CHECK(fast.objective ==
                  doctest::Approx(naive.objective).epsilon(1e-12));
        }
    }
}

TEST_CASE("solver matches the dense grid oracle on random instances") {
    int feasible_count = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing::random_qp_instance(0xA0000 + trial);
        const QpSolution sol = solve_ball_qp(inst.q, inst.u_des, inst.u_max, inst.cons);
        const auto grid =
            testing::qp_grid_rowwise(inst.q, inst.u_des, inst.u_max, inst.cons, 2001);
        if (sol.feasible) {
            ++feasible_count;
            // Exact solution can only beat the grid.
            CHECK(sol.objective <= grid.objective + 1e-3);
            CHECK(norm(sol.u) <= inst.u_max + 1e-9);
            for (const AffineConstraint& c : inst.cons) {
                CHECK(dot(c.c_u, sol.u) + c.c_0 >= -1e-9);
            }
        } else {
            // The grid may admit points the continuous problem rejects only
            // in hairline cases; a feasible grid point means a real miss.
            CHECK_FALSE(grid.feasible);
        }
    }
    CHECK(feasible_count > 50);
}

TEST_CASE("objective argmin is invariant to scaling the weight matrix") {
    for (int trial = 0; trial < 50; ++trial) {
        const auto inst = testing::random_qp_instance(0xB0000 + trial);
        const QpSolution a = solve_ball_qp(inst.q, inst.u_des, inst.u_max, inst.cons);
        Mat2 scaled = inst.q;
        scaled.m00 *= 7.5;
        scaled.m01 *= 7.5;
        scaled.m10 *= 7.5;
        scaled.m11 *= 7.5;
        const QpSolution b = solve_ball_qp(scaled, inst.u_des, inst.u_max, inst.cons);
        REQUIRE(a.feasible == b.feasible);
        if (a.feasible) CHECK(norm(a.u - b.u) <= 1e-9);
    }
}

TEST_CASE("anisotropic weight changes the projection direction") {
    // Strongly weighting x keeps u_x close to the desired value.
    const AffineConstraint cons[] = {{{0.0, 1.0}, -0.5}};  // u_y >= 0.5
    const Mat2 heavy_x{100.0, 0.0, 0.0, 1.0};
    const QpSolution sol = solve_ball_qp(heavy_x, {0.8, 0.0}, 2.0, cons);
    REQUIRE(sol.feasible);
    CHECK(sol.u.y == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sol.u.x == doctest::Approx(0.8).epsilon(1e-9));
}
