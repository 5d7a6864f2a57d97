#include "hcbf/barrier.hpp"

#include <cmath>

namespace hcbf {

Vec2 unit_normal(double theta) {
    const double t = wrap_angle(theta);
    return {std::cos(t), std::sin(t)};
}

double braking_distance(double theta, const AgentState& agent, const ObstacleState& obs,
                        const Limits& limits) {
    const double s = dot(unit_normal(theta), agent.v - obs.velocity);
    if (s >= 0.0) return 0.0;
    return s * s / (2.0 * limits.u_max);
}

double h_value(double theta, const AgentState& agent, const ObstacleState& obs,
               const SupportModel& support, const Limits& limits) {
    const Vec2 n = unit_normal(theta);
    return dot(n, agent.p - obs.position) - support.total_distance(theta) -
           braking_distance(theta, agent, obs, limits);
}

AffineConstraint cbf_constraint(double theta, const AgentState& agent,
                                const ObstacleState& obs, const SupportModel& support,
                                const AlphaFunction& alpha, const Limits& limits) {
    const Vec2 n = unit_normal(theta);
    const double s = dot(n, agent.v - obs.velocity);
    const double h = h_value(theta, agent, obs, support, limits);
    AffineConstraint c;
    c.c_0 = s + alpha.gain * h;
    if (s < 0.0) {
        // Approaching: hdot = s - (n.u) s / u_max, so the u coefficient is
        // -n s / u_max (pointing along n since s < 0).
        c.c_u = (-s / limits.u_max) * n;
    }
    return c;
}

double orthogonal_theta(const AgentState& agent, const ObstacleState& obs) {
    const Vec2 q = closest_point(obs.shape, obs.position, agent.p);
    const Vec2 d = agent.p - q;
    return std::atan2(d.y, d.x);
}

}  // namespace hcbf
