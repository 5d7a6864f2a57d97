#include "hcbf/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace hcbf {

Vec2 pd_control(const AgentState& agent, Vec2 goal, double kp, double kd) {
    return kp * (goal - agent.p) - kd * agent.v;
}

AgentState step_exact(const AgentState& agent, Vec2 u, double dt) {
    return {agent.p + dt * agent.v + (0.5 * dt * dt) * u, agent.v + dt * u};
}

namespace {

std::vector<FilterObstacle> build_filter_obstacles(const Scenario& scenario) {
    std::vector<FilterObstacle> out;
    out.reserve(scenario.obstacles.size());
    for (const ScenarioObstacle& obs : scenario.obstacles) {
        SupportModel support =
            obs.support.fourier
                ? fit_fourier(obs.shape, obs.support.n_terms, obs.support.grid_points,
                              scenario.agent_radius)
                : exact_support(obs.shape, scenario.agent_radius);
        out.push_back({{obs.shape, obs.position, obs.velocity}, std::move(support)});
    }
    return out;
}

}  // namespace

void validate(const Scenario& scenario) {
    if (!(scenario.dt > 0.0)) throw std::invalid_argument("sim.dt must be > 0");
    if (!(scenario.duration > 0.0)) {
        throw std::invalid_argument("sim.duration must be > 0");
    }
    if (!(scenario.limits.u_max > 0.0)) {
        throw std::invalid_argument("limits.u_max must be > 0");
    }
    if (!(scenario.agent_radius >= 0.0)) {
        throw std::invalid_argument("agent.radius must be >= 0");
    }
    if (scenario.theta_update_every < 1) {
        throw std::invalid_argument("sim.theta_update_every must be >= 1");
    }
    if (!is_finite(scenario.agent.p) || !is_finite(scenario.agent.v) ||
        !is_finite(scenario.goal)) {
        throw std::invalid_argument("agent state and goal must be finite");
    }
    validate(scenario.filter);
    if (scenario.filter.mode == FilterMode::FixedTheta &&
        scenario.filter.fixed_thetas.size() != scenario.obstacles.size()) {
        throw std::invalid_argument(
            "filter.thetas must list one angle per obstacle in fixed-theta mode");
    }

    for (std::size_t k = 0; k < scenario.obstacles.size(); ++k) {
        if (!is_finite(scenario.obstacles[k].position) ||
            !is_finite(scenario.obstacles[k].velocity)) {
            throw std::invalid_argument("obstacles[" + std::to_string(k) +
                                        "]: non-finite pose or velocity");
        }
    }

    // The initial state must admit at least one feasible hyperplane per
    // obstacle (h(x, theta) >= 0 for some theta).
    const auto obstacles = build_filter_obstacles(scenario);
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
        bool ok = false;
        for (int i = 0; i < 3600 && !ok; ++i) {
            const double theta = -kPi + kTwoPi * i / 3600;
            ok = h_value(theta, scenario.agent, obstacles[k].state, obstacles[k].support,
                         scenario.limits) >= 0.0;
        }
        if (!ok) {
            throw std::invalid_argument("obstacles[" + std::to_string(k) +
                                        "]: no feasible hyperplane at the initial state");
        }
    }
}

TrajectoryLog run_scenario(const Scenario& scenario) {
    validate(scenario);

    std::vector<FilterObstacle> obstacles = build_filter_obstacles(scenario);
    const std::size_t n = obstacles.size();
    const AlphaFunction alpha{scenario.filter.alpha_gain};
    const int steps = static_cast<int>(std::llround(scenario.duration / scenario.dt));

    TrajectoryLog log;
    log.rows.reserve(static_cast<std::size_t>(steps) + 1);

    AgentState agent = scenario.agent;
    ThetaAssignment warm;
    bool have_warm = false;

    for (int step = 0; step <= steps; ++step) {
        LogRow row;
        row.t = step * scenario.dt;
        row.p = agent.p;
        row.v = agent.v;
        row.u_des = pd_control(agent, scenario.goal, scenario.kp, scenario.kd);
        row.theta.resize(n);
        row.h.resize(n);
        row.constraint.resize(n);
        row.clearance.resize(n);

        for (std::size_t k = 0; k < n; ++k) {
            row.clearance[k] = distance_to_hull(obstacles[k].state.shape,
                                                obstacles[k].state.position, agent.p) -
                               scenario.agent_radius;
        }

        FilterResult result;
        bool inside_hull = false;
        try {
            switch (scenario.filter.mode) {
                case FilterMode::Orthogonal: {
                    ThetaAssignment thetas;
                    thetas.theta.resize(n);
                    thetas.feasible.assign(n, false);
                    for (std::size_t k = 0; k < n; ++k) {
                        thetas.theta[k] = orthogonal_theta(agent, obstacles[k].state);
                    }
                    result = solve_fixed_theta(agent, obstacles, thetas, row.u_des,
                                               scenario.filter, scenario.limits);
                    break;
                }
                case FilterMode::LeastRestrictive: {
                    if (!have_warm || step % scenario.theta_update_every == 0) {
                        result = optimize(agent, obstacles, row.u_des, scenario.filter,
                                          scenario.limits, have_warm ? &warm : nullptr);
                    } else {
                        result = solve_fixed_theta(agent, obstacles, warm, row.u_des,
                                                   scenario.filter, scenario.limits);
                        if (result.status == FilterStatus::Infeasible) {
                            // Off-cadence feasibility loss: re-optimize now.
                            result = optimize(agent, obstacles, row.u_des,
                                              scenario.filter, scenario.limits, &warm);
                        }
                    }
                    break;
                }
                case FilterMode::FixedTheta: {
                    ThetaAssignment thetas;
                    thetas.theta = scenario.filter.fixed_thetas;
                    thetas.feasible.assign(n, false);
                    result = solve_fixed_theta(agent, obstacles, thetas, row.u_des,
                                               scenario.filter, scenario.limits);
                    break;
                }
            }
        } catch (const InsideHullError&) {
            inside_hull = true;
            result.thetas.theta.assign(n, 0.0);
            if (have_warm) result.thetas.theta = warm.theta;
        }

        row.status = result.status;
        if (result.status == FilterStatus::Infeasible) {
            // Maximal braking; the run is recorded as failed.
            const double speed = norm(agent.v);
            row.u = speed > 0.0 ? (-scenario.limits.u_max / speed) * agent.v : Vec2{};
        } else {
            row.u = result.u;
        }

        for (std::size_t k = 0; k < n; ++k) {
            const double theta = result.thetas.theta.empty() ? 0.0 : result.thetas.theta[k];
            row.theta[k] = theta;
            row.h[k] = h_value(theta, agent, obstacles[k].state, obstacles[k].support,
                               scenario.limits);
            const AffineConstraint c =
                cbf_constraint(theta, agent, obstacles[k].state, obstacles[k].support,
                               alpha, scenario.limits);
            row.constraint[k] = dot(c.c_u, row.u) + c.c_0;
        }
        log.rows.push_back(std::move(row));

        double min_clearance = std::numeric_limits<double>::infinity();
        for (double c : log.rows.back().clearance) min_clearance = std::min(min_clearance, c);
        if (n > 0 && min_clearance < 0.0) {
            log.status = RunStatus::ClearanceViolation;
            log.message = "clearance violation at t=" + std::to_string(log.rows.back().t);
            return log;
        }
        if (result.status == FilterStatus::Infeasible || inside_hull) {
            log.status = RunStatus::InfeasibleHalt;
            log.message = "no feasible safe control at t=" +
                          std::to_string(log.rows.back().t) + "; maximal braking applied";
            return log;
        }

        warm = result.thetas;
        have_warm = true;

        if (step < steps) {
            agent = step_exact(agent, log.rows.back().u, scenario.dt);
            for (FilterObstacle& obs : obstacles) {
                obs.state.position += scenario.dt * obs.state.velocity;
            }
        }
    }
    log.status = RunStatus::Success;
    return log;
}

Metrics metrics(const TrajectoryLog& log, const Scenario& scenario) {
    if (log.rows.empty()) throw std::invalid_argument("metrics: empty log");
    Metrics m;
    const std::size_t n = scenario.obstacles.size();
    m.min_clearance.assign(n, std::numeric_limits<double>::infinity());
    std::vector<double> deviation(log.rows.size());
    for (std::size_t i = 0; i < log.rows.size(); ++i) {
        const LogRow& row = log.rows[i];
        for (std::size_t k = 0; k < n; ++k) {
            m.min_clearance[k] = std::min(m.min_clearance[k], row.clearance[k]);
        }
        if (!m.time_to_goal_1m && norm(row.p - scenario.goal) <= 1.0) {
            m.time_to_goal_1m = row.t;
        }
        deviation[i] = norm(row.u - row.u_des);
    }
    for (std::size_t i = 0; i + 1 < log.rows.size(); ++i) {
        const double dt = log.rows[i + 1].t - log.rows[i].t;
        m.intervention_integral += 0.5 * (deviation[i] + deviation[i + 1]) * dt;
        if (deviation[i] > 1e-6) m.intervention_duration += dt;
    }
    return m;
}

}  // namespace hcbf
