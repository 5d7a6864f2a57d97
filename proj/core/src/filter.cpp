#include "hcbf/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcbf {

namespace {

double tie_eps(double objective) { return 1e-12 * std::max(1.0, std::abs(objective)); }

double angular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

struct GridCandidate {
    double theta;
    AffineConstraint constraint;
};

}  // namespace

void validate(const FilterConfig& config) {
    if (!is_symmetric_positive_definite(config.q)) {
        throw std::invalid_argument("filter.q must be symmetric positive definite");
    }
    if (!(config.alpha_gain > 0.0)) {
        throw std::invalid_argument("filter.alpha_gain must be > 0");
    }
    if (config.theta_grid < 8) {
        throw std::invalid_argument("filter.theta_grid must be >= 8");
    }
    if (!(config.refine_tol > 0.0)) {
        throw std::invalid_argument("filter.refine_tol must be > 0");
    }
    if (config.max_sweeps < 1) {
        throw std::invalid_argument("filter.max_sweeps must be >= 1");
    }
    if (!(config.cbf_margin >= 0.0)) {
        throw std::invalid_argument("filter.cbf_margin must be >= 0");
    }
    if (!(config.theta_select_margin >= 0.0)) {
        throw std::invalid_argument("filter.theta_select_margin must be >= 0");
    }
}

FilterResult solve_fixed_theta(const AgentState& agent,
                               std::span<const FilterObstacle> obstacles,
                               const ThetaAssignment& thetas, Vec2 u_des,
                               const FilterConfig& config, const Limits& limits) {
    validate(config);
    if (thetas.theta.size() != obstacles.size()) {
        throw std::invalid_argument("theta assignment size must match obstacle count");
    }
    const AlphaFunction alpha{config.alpha_gain};
    std::vector<AffineConstraint> cons(obstacles.size());
    FilterResult result;
    result.thetas.theta = thetas.theta;
    result.thetas.feasible.resize(obstacles.size());
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
        cons[k] = cbf_constraint(thetas.theta[k], agent, obstacles[k].state,
                                 obstacles[k].support, alpha, limits);
        cons[k].c_0 -= config.cbf_margin;
        result.thetas.feasible[k] =
            h_value(thetas.theta[k], agent, obstacles[k].state, obstacles[k].support,
                    limits) >= 0.0;
    }
    const QpSolution sol = solve_ball_qp(config.q, u_des, limits.u_max, cons);
    if (!sol.feasible) return result;  // status Infeasible, objective inf
    result.u = sol.u;
    result.objective = sol.objective;
    result.status = FilterStatus::Optimal;
    return result;
}

FilterResult optimize(const AgentState& agent, std::span<const FilterObstacle> obstacles,
                      Vec2 u_des, const FilterConfig& config, const Limits& limits,
                      const ThetaAssignment* warm) {
    validate(config);
    const std::size_t n = obstacles.size();
    if (warm != nullptr && warm->theta.size() != n) {
        throw std::invalid_argument("warm-start assignment size must match obstacle count");
    }
    const AlphaFunction alpha{config.alpha_gain};

    const auto h_of = [&](std::size_t k, double theta) {
        return h_value(theta, agent, obstacles[k].state, obstacles[k].support, limits);
    };
    const auto constraint_of = [&](std::size_t k, double theta) {
        AffineConstraint c = cbf_constraint(theta, agent, obstacles[k].state,
                                            obstacles[k].support, alpha, limits);
        c.c_0 -= config.cbf_margin;
        return c;
    };

    if (n == 0) {
        const QpSolution sol = solve_ball_qp(config.q, u_des, limits.u_max, {});
        FilterResult result;
        if (sol.feasible) {
            result.u = sol.u;
            result.objective = sol.objective;
            result.status = FilterStatus::Optimal;
        }
        return result;
    }

    // Grid angles passing the feasibility requirement h(x, theta) >= 0,
    // with their barrier constraints precomputed.
    const int grid_n = config.theta_grid;
    std::vector<std::vector<GridCandidate>> feasible(n);
    for (std::size_t k = 0; k < n; ++k) {
        feasible[k].reserve(static_cast<std::size_t>(grid_n));
        for (int i = 0; i < grid_n; ++i) {
            const double theta = -kPi + kTwoPi * i / grid_n;
            if (h_of(k, theta) >= config.theta_select_margin) {
                feasible[k].push_back({theta, constraint_of(k, theta)});
            }
        }
    }

    // Incumbent assignment. Preference order per obstacle: warm start,
    // orthogonal, the grid angle maximizing h.
    std::vector<double> incumbent(n, 0.0);
    std::vector<bool> pinned(n, false);
    bool fallback_used = false;
    for (std::size_t k = 0; k < n; ++k) {
        if (warm != nullptr && h_of(k, warm->theta[k]) >= 0.0) {
            incumbent[k] = warm->theta[k];
        } else {
            bool assigned = false;
            try {
                const double orth = orthogonal_theta(agent, obstacles[k].state);
                if (h_of(k, orth) >= config.theta_select_margin) {
                    incumbent[k] = orth;
                    assigned = true;
                }
            } catch (const InsideHullError&) {
            }
            if (!assigned) {
                double best_h = -std::numeric_limits<double>::infinity();
                for (int i = 0; i < grid_n; ++i) {
                    const double theta = -kPi + kTwoPi * i / grid_n;
                    const double h = h_of(k, theta);
                    if (h > best_h) best_h = h, incumbent[k] = theta;
                }
            }
        }
        if (feasible[k].empty()) {
            // No grid angle satisfies h >= 0: keep the previous angle when it
            // still does, otherwise the problem has no acceptable hyperplane.
            if (warm != nullptr && h_of(k, warm->theta[k]) >= 0.0) {
                incumbent[k] = warm->theta[k];
                pinned[k] = true;
                fallback_used = true;
            } else {
                FilterResult result;
                result.thetas.theta = incumbent;
                result.thetas.feasible.assign(n, false);
                return result;
            }
        }
    }
    const std::vector<double> reference = incumbent;  // tie-break anchor

    std::vector<AffineConstraint> cons(n);
    const auto solve_current = [&]() {
        for (std::size_t k = 0; k < n; ++k) cons[k] = constraint_of(k, incumbent[k]);
        return solve_ball_qp(config.q, u_des, limits.u_max, cons);
    };

    QpSolution inc_sol = solve_current();
    double inc_obj =
        inc_sol.feasible ? inc_sol.objective : std::numeric_limits<double>::infinity();

    // Seed with the orthogonal assignment where it is feasible, so the result
    // never exceeds the orthogonal objective.
    {
        bool orth_ok = true;
        std::vector<double> orth(n);
        for (std::size_t k = 0; k < n && orth_ok; ++k) {
            try {
                orth[k] = orthogonal_theta(agent, obstacles[k].state);
            } catch (const InsideHullError&) {
                orth_ok = false;
            }
            if (orth_ok) orth_ok = h_of(k, orth[k]) >= config.theta_select_margin && !pinned[k];
        }
        if (orth_ok) {
            std::vector<double> saved = incumbent;
            incumbent = orth;
            const QpSolution sol = solve_current();
            if (sol.feasible && sol.objective < inc_obj - tie_eps(inc_obj)) {
                inc_sol = sol;
                inc_obj = sol.objective;
            } else {
                incumbent = saved;
            }
        }
    }

    // Coordinate descent over the per-obstacle angles.
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
        bool improved = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (pinned[k]) continue;
            for (std::size_t j = 0; j < n; ++j) cons[j] = constraint_of(j, incumbent[j]);

            double best_theta = incumbent[k];
            double best_obj = inc_obj;
            QpSolution best_sol = inc_sol;
            for (const GridCandidate& cand : feasible[k]) {
                cons[k] = cand.constraint;
                const QpSolution sol = solve_ball_qp(config.q, u_des, limits.u_max, cons);
                if (!sol.feasible) continue;
                const double eps = tie_eps(best_obj);
                if (sol.objective < best_obj - eps ||
                    (std::abs(sol.objective - best_obj) <= eps &&
                     angular_distance(cand.theta, reference[k]) <
                         angular_distance(best_theta, reference[k]))) {
                    best_theta = cand.theta;
                    best_obj = sol.objective;
                    best_sol = sol;
                }
            }

            // Golden-section refinement around the best grid angle.
            {
                constexpr double kInvPhi = 0.6180339887498949;
                const double cell = kTwoPi / grid_n;
                const auto eval = [&](double theta) {
                    if (h_of(k, theta) < config.theta_select_margin) {
                        return std::numeric_limits<double>::infinity();
                    }
                    cons[k] = constraint_of(k, theta);
                    const QpSolution sol = solve_ball_qp(config.q, u_des, limits.u_max, cons);
                    if (!sol.feasible) return std::numeric_limits<double>::infinity();
                    if (sol.objective < best_obj - tie_eps(best_obj)) {
                        best_theta = theta;
                        best_obj = sol.objective;
                        best_sol = sol;
                    }
                    return sol.objective;
                };
                double lo = best_theta - cell;
                double hi = best_theta + cell;
                double x1 = hi - kInvPhi * (hi - lo);
                double x2 = lo + kInvPhi * (hi - lo);
                double f1 = eval(x1);
                double f2 = eval(x2);
                while (hi - lo > config.refine_tol) {
                    if (f1 < f2) {
                        hi = x2, x2 = x1, f2 = f1;
                        x1 = hi - kInvPhi * (hi - lo);
                        f1 = eval(x1);
                    } else {
                        lo = x1, x1 = x2, f1 = f2;
                        x2 = lo + kInvPhi * (hi - lo);
                        f2 = eval(x2);
                    }
                }
            }

            if (best_obj < inc_obj - tie_eps(inc_obj)) improved = true;
            if (best_obj < inc_obj - tie_eps(inc_obj) ||
                angular_distance(best_theta, reference[k]) <
                    angular_distance(incumbent[k], reference[k])) {
                incumbent[k] = wrap_angle(best_theta);
                inc_obj = best_obj;
                inc_sol = best_sol;
            }
        }
        if (!improved) break;
    }

    FilterResult result;
    result.thetas.theta = incumbent;
    result.thetas.feasible.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        result.thetas.feasible[k] = h_of(k, incumbent[k]) >= 0.0;
    }
    if (!inc_sol.feasible) return result;  // Infeasible
    result.u = inc_sol.u;
    result.objective = inc_obj;
    result.status =
        fallback_used ? FilterStatus::FallbackPreviousTheta : FilterStatus::Optimal;
    return result;
}

}  // namespace hcbf
