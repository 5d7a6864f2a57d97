#pragma once

#include <span>

#include "hcbf/barrier.hpp"
#include "hcbf/vec2.hpp"

namespace hcbf {

struct QpSolution {
    bool feasible = false;
    Vec2 u;
    double objective = 0.0;
};

/// Exact minimizer of (u - u_des)^T Q (u - u_des) over the intersection of
/// the disc ||u|| <= u_max with the halfplanes dot(c_u, u) + c_0 >= 0.
///
/// Solved by candidate enumeration: u_des, Q-weighted projections onto each
/// constraint line, pairwise line intersections, the critical points of the
/// objective on the bounding circle, and circle/line intersections. The disc
/// candidates are only generated when the halfplane-only optimum leaves the
/// disc, which is the only case where they can be active.
QpSolution solve_ball_qp(const Mat2& q, Vec2 u_des, double u_max,
                         std::span<const AffineConstraint> constraints);

}  // namespace hcbf
