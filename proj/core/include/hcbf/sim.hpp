#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcbf/barrier.hpp"
#include "hcbf/filter.hpp"

namespace hcbf {

struct SupportSettings {
    bool fourier = false;
    int n_terms = 16;
    int grid_points = 720;
};

struct ScenarioObstacle {
    ObstacleShape shape;
    Vec2 position;  // world position of the shape's reference point at t = 0
    Vec2 velocity;  // constant
    SupportSettings support;
};

struct Scenario {
    AgentState agent;
    double agent_radius = 0.0;
    Vec2 goal;
    double kp = 1.0;
    double kd = 2.0;
    Limits limits;
    double dt = 0.01;
    double duration = 10.0;
    int theta_update_every = 1;  // re-optimize theta every k-th step
    FilterConfig filter;
    std::vector<ScenarioObstacle> obstacles;
};

struct LogRow {
    double t = 0.0;
    Vec2 p, v, u_des, u;
    std::vector<double> theta;       // per obstacle
    std::vector<double> h;           // h(x, theta) per obstacle
    std::vector<double> constraint;  // hdot + alpha(h) at the applied u
    std::vector<double> clearance;   // dist(agent centre, hull) - agent radius
    FilterStatus status = FilterStatus::Optimal;
};

enum class RunStatus { Success, ClearanceViolation, InfeasibleHalt };

struct TrajectoryLog {
    std::vector<LogRow> rows;
    RunStatus status = RunStatus::Success;
    std::string message;
};

struct Metrics {
    std::vector<double> min_clearance;          // per obstacle
    std::optional<double> time_to_goal_1m;      // first t with ||p - goal|| <= 1
    double intervention_integral = 0.0;         // trapezoidal int ||u - u_des|| dt
    double intervention_duration = 0.0;         // measure of ||u - u_des|| > 1e-6
};

/// PD desired control u_des = kp (goal - p) - kd v, unclamped.
Vec2 pd_control(const AgentState& agent, Vec2 goal, double kp, double kd);

/// Exact zero-order-hold step of the double integrator:
/// p + v dt + u dt^2 / 2, v + u dt.
AgentState step_exact(const AgentState& agent, Vec2 u, double dt);

/// Throws std::invalid_argument when the scenario violates its invariants
/// (non-positive dt/duration/u_max, accelerating obstacles are unexpressible,
/// or no feasible hyperplane angle for some obstacle at the initial state).
void validate(const Scenario& scenario);

/// Runs the scenario to completion or early failure. Deterministic: identical
/// scenarios produce bit-identical logs. On an Infeasible filter result the
/// agent brakes maximally for the logged step and the run halts as failed.
TrajectoryLog run_scenario(const Scenario& scenario);

Metrics metrics(const TrajectoryLog& log, const Scenario& scenario);

}  // namespace hcbf
