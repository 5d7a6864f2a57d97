#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hcbf/filter.hpp"
#include "hcbf/qp.hpp"
#include "hcbf/sim.hpp"
#include "hcbf/support.hpp"

using namespace hcbf;

namespace {

FilterObstacle disc_obstacle(Vec2 at, double radius, Vec2 vel, double agent_radius) {
    ObstacleShape shape = ObstacleShape::disc(radius);
    SupportModel support = exact_support(shape, agent_radius);
    return {{std::move(shape), at, vel}, std::move(support)};
}

std::vector<FilterObstacle> bench_obstacles(int n) {
    std::vector<FilterObstacle> out;
    for (int k = 0; k < n; ++k) {
        out.push_back(disc_obstacle({2.0 + 1.5 * k, 0.4 * (k - 1)}, 0.8, {0, 0}, 0.3));
    }
    return out;
}

}  // namespace

static void QpUnconstrained(benchmark::State& state) {
    const Mat2 q = Mat2::identity();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_ball_qp(q, {0.3, -0.2}, 1.0, {}));
    }
}
BENCHMARK(QpUnconstrained);

static void QpActiveConstraints(benchmark::State& state) {
    const Mat2 q{1.4, 0.3, 0.3, 0.9};
    std::vector<AffineConstraint> cons;
    for (int k = 0; k < state.range(0); ++k) {
        const double phi = 0.7 * k + 0.4;
        cons.push_back({{std::cos(phi), std::sin(phi)}, -0.2});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_ball_qp(q, {1.4, -1.1}, 1.0, cons));
    }
}
BENCHMARK(QpActiveConstraints)->Arg(1)->Arg(2)->Arg(4);

static void SupportDistanceEllipse(benchmark::State& state) {
    const auto shape = ObstacleShape::ellipse(1.8, 0.7, 0.5);
    double theta = 0.0;
    for (auto _ : state) {
        theta += 1e-3;
        benchmark::DoNotOptimize(support_distance(shape, theta));
    }
}
BENCHMARK(SupportDistanceEllipse);

static void SupportModelFourierEval(benchmark::State& state) {
    const auto shape =
        ObstacleShape::polygon({{-1.0, -0.6}, {1.1, -0.4}, {0.8, 0.7}, {-0.7, 0.8}});
    const SupportModel model = fit_fourier(shape, static_cast<int>(state.range(0)));
    double theta = 0.0;
    for (auto _ : state) {
        theta += 1e-3;
        benchmark::DoNotOptimize(model.shape_distance(theta));
    }
}
BENCHMARK(SupportModelFourierEval)->Arg(8)->Arg(16)->Arg(32);

static void FourierFit(benchmark::State& state) {
    const auto shape =
        ObstacleShape::polygon({{-1.0, -0.6}, {1.1, -0.4}, {0.8, 0.7}, {-0.7, 0.8}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_fourier(shape, 16, 720));
    }
}
BENCHMARK(FourierFit);

static void ClosestPointEllipse(benchmark::State& state) {
    const auto shape = ObstacleShape::ellipse(2.0, 1.0, 0.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(closest_point(shape, {0, 0}, {3.0, 1.5}));
    }
}
BENCHMARK(ClosestPointEllipse);

static void OptimizeJoint(benchmark::State& state) {
    const AgentState agent{{0, 0}, {1.2, 0.1}};
    const auto obstacles = bench_obstacles(static_cast<int>(state.range(0)));
    const FilterConfig config;
    const Limits limits{1.0};
    ThetaAssignment warm;
    for (auto _ : state) {
        const FilterResult r =
            optimize(agent, obstacles, {1.0, 0.0}, config, limits,
                     warm.theta.empty() ? nullptr : &warm);
        warm = r.thetas;
        benchmark::DoNotOptimize(warm);
    }
}
BENCHMARK(OptimizeJoint)->Arg(1)->Arg(3);

static void ScenarioStepCost(benchmark::State& state) {
    Scenario scenario;
    scenario.agent = {{-6.0, 1.5}, {1.5, 0.0}};
    scenario.agent_radius = 0.3;
    scenario.goal = {8.0, 1.5};
    scenario.kp = 0.0;
    scenario.kd = 0.0;
    scenario.dt = 0.01;
    scenario.duration = 1.0;
    scenario.obstacles.push_back({ObstacleShape::disc(1.0), {0.0, 0.0}, {0.0, 0.0}, {}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(scenario));
    }
    state.SetItemsProcessed(state.iterations() * 101);  // rows per run
}
BENCHMARK(ScenarioStepCost);

BENCHMARK_MAIN();
