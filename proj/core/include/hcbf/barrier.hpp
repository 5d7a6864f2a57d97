#pragma once

#include "hcbf/shape.hpp"
#include "hcbf/support.hpp"
#include "hcbf/vec2.hpp"

namespace hcbf {

struct AgentState {
    Vec2 p;  // position (m)
    Vec2 v;  // velocity (m/s)
};

struct ObstacleState {
    ObstacleShape shape;
    Vec2 position;  // world position of the shape's reference point (m)
    Vec2 velocity;  // constant over a scenario (m/s)
};

struct Limits {
    double u_max = 1.0;  // acceleration bound, ||u|| <= u_max (m/s^2)
};

/// Linear class-K function alpha(x) = gain * x.
struct AlphaFunction {
    double gain = 1.0;
};

/// The barrier condition hdot + alpha(h) >= 0 reduced to affine-in-u form:
/// feasible iff dot(c_u, u) + c_0 >= 0. c_u is zero when the pair recedes.
struct AffineConstraint {
    Vec2 c_u;
    double c_0 = 0.0;
};

/// Unit normal n(theta) = (cos theta, sin theta). The angle is wrapped to
/// [-pi, pi] first, so evaluation is exactly 2pi-periodic.
Vec2 unit_normal(double theta);

/// Braking distance along n(theta): (n.(v_i - v_j))^2 / (2 u_max) when the
/// pair approaches (n.(v_i - v_j) < 0), zero otherwise.
double braking_distance(double theta, const AgentState& agent, const ObstacleState& obs,
                        const Limits& limits);

/// Barrier value h(x, theta) = n.(p_i - p_j) - delta_ij(theta) - b_ij.
/// `support` must have been built for obs.shape with the agent's radius.
double h_value(double theta, const AgentState& agent, const ObstacleState& obs,
               const SupportModel& support, const Limits& limits);

/// Reduces hdot + alpha(h) >= 0 to an affine constraint on u.
AffineConstraint cbf_constraint(double theta, const AgentState& agent,
                                const ObstacleState& obs, const SupportModel& support,
                                const AlphaFunction& alpha, const Limits& limits);

/// Baseline hyperplane orientation: the normal pointing from the hull's
/// closest point towards the agent. Throws InsideHullError when the agent
/// centre is not strictly outside the hull.
double orthogonal_theta(const AgentState& agent, const ObstacleState& obs);

}  // namespace hcbf
