#include "hcbf/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hcbf {

namespace {

constexpr double kFeasTol = 1e-9;

struct Line {
    Vec2 c;
    double d;  // feasible iff dot(c, u) + d >= 0
};

bool lines_satisfied(const std::vector<Line>& lines, Vec2 u) {
    for (const Line& l : lines) {
        if (dot(l.c, u) + l.d < -kFeasTol) return false;
    }
    return true;
}

// d/dphi of the objective restricted to the circle ||u|| = r. Its sign is
// exactly invariant under positive scaling of Q, which keeps the refined
// critical points (and hence the returned control) scale invariant.
double circle_slope(const Mat2& q, Vec2 u_des, double r, double phi) {
    const Vec2 u{r * std::cos(phi), r * std::sin(phi)};
    const Vec2 grad = q * (u - u_des);
    return 2.0 * (grad.x * -u.y + grad.y * u.x);
}

// All critical points of the objective on the circle, by scanning for sign
// changes of the slope and bisecting each one. Maxima are harmless extra
// candidates; they lose the objective comparison.
void circle_critical_points(const Mat2& q, Vec2 u_des, double r, std::vector<Vec2>& out) {
    constexpr int kScan = 720;
    double slope[kScan];
    for (int i = 0; i < kScan; ++i) {
        slope[i] = circle_slope(q, u_des, r, kTwoPi * i / kScan);
    }
    bool found = false;
    for (int i = 0; i < kScan; ++i) {
        const int next = (i + 1) % kScan;
        if (slope[i] == 0.0) {
            out.push_back({r * std::cos(kTwoPi * i / kScan),
                           r * std::sin(kTwoPi * i / kScan)});
            found = true;
            continue;
        }
        if (slope[i] * slope[next] >= 0.0) continue;
        double lo = kTwoPi * i / kScan;
        double hi = kTwoPi * (i + 1) / kScan;
        const bool lo_positive = slope[i] > 0.0;
        while (hi - lo > 1e-14) {
            const double mid = 0.5 * (lo + hi);
            const double s = circle_slope(q, u_des, r, mid);
            if (s == 0.0 || (s > 0.0) == lo_positive) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double phi = 0.5 * (lo + hi);
        out.push_back({r * std::cos(phi), r * std::sin(phi)});
        found = true;
    }
    // Constant objective on the circle (Q isotropic, u_des at the origin):
    // any point serves.
    if (!found) out.push_back({r, 0.0});
}

}  // namespace

QpSolution solve_ball_qp(const Mat2& q, Vec2 u_des, double u_max,
                         std::span<const AffineConstraint> constraints) {
    std::vector<Line> lines;
    lines.reserve(constraints.size());
    for (const AffineConstraint& c : constraints) {
        if (norm_sq(c.c_u) <= 1e-60) {
            // u-independent constraint: either vacuous or unsatisfiable.
            if (c.c_0 < -kFeasTol) return {};
            continue;
        }
        lines.push_back({c.c_u, c.c_0});
    }

    const auto objective = [&](Vec2 u) { return quad_form(q, u - u_des); };

    // Phase 1: optimum ignoring the disc bound. Complete for the halfplane
    // polytope: unconstrained point, single-line Q-projections, vertices.
    std::vector<Vec2> candidates;
    candidates.push_back(u_des);
    for (const Line& l : lines) {
        const Vec2 qinv_c = solve2(q, l.c);
        const double denom = dot(l.c, qinv_c);
        if (denom <= 0.0) continue;
        candidates.push_back(u_des - ((dot(l.c, u_des) + l.d) / denom) * qinv_c);
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const Mat2 a{lines[i].c.x, lines[i].c.y, lines[j].c.x, lines[j].c.y};
            const double scale = norm(lines[i].c) * norm(lines[j].c);
            if (std::abs(det(a)) <= 1e-14 * scale) continue;
            candidates.push_back(solve2(a, {-lines[i].d, -lines[j].d}));
        }
    }

    QpSolution best;
    best.objective = std::numeric_limits<double>::infinity();
    for (Vec2 u : candidates) {
        if (!lines_satisfied(lines, u)) continue;
        const double obj = objective(u);
        if (!best.feasible || obj < best.objective) best = {true, u, obj};
    }
    if (best.feasible && norm(best.u) <= u_max + 1e-12) return best;

    // Phase 2: the disc bound is active at the optimum (also reached when
    // phase 1 came up empty, e.g. a sliver polytope whose vertex was skipped
    // as ill-conditioned: any feasible disc point then lies near the circle).
    // Candidates on the circle: objective minima and circle/line
    // intersections.
    candidates.clear();
    circle_critical_points(q, u_des, u_max, candidates);
    for (const Line& l : lines) {
        const double c_norm_sq = norm_sq(l.c);
        const Vec2 foot = (-l.d / c_norm_sq) * l.c;
        const double t_sq = u_max * u_max - norm_sq(foot);
        if (t_sq < 0.0) continue;
        const double t = std::sqrt(t_sq);
        const Vec2 dir = Vec2{-l.c.y, l.c.x} / std::sqrt(c_norm_sq);
        candidates.push_back(foot + t * dir);
        candidates.push_back(foot - t * dir);
    }

    best = {};
    best.objective = std::numeric_limits<double>::infinity();
    for (Vec2 u : candidates) {
        if (norm(u) > u_max + kFeasTol) continue;
        if (!lines_satisfied(lines, u)) continue;
        const double obj = objective(u);
        if (!best.feasible || obj < best.objective) best = {true, u, obj};
    }
    if (!best.feasible) return {};
    return best;
}

}  // namespace hcbf
