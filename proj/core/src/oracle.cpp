#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hcbf/filter.hpp"

namespace hcbf {

namespace {

// Affine feasibility condition dot(c, u) + c0 >= 0, derived inline from the
// barrier inequality rather than through cbf_constraint, to keep this path
// independent of the solver's constraint construction.
struct Condition {
    Vec2 c;
    double c0;
};

struct ThetaChoice {
    double theta;
    Condition cond;
};

// Dense u-grid minimization of the objective over the disc intersected with
// affine conditions, evaluated row by row: each condition clips the row to an
// x-interval and the convex row quadratic is minimized by clamping its
// unconstrained minimizer onto the surviving grid indices. Equal to a full
// grid scan, without visiting every point.
class RowScanner {
  public:
    RowScanner(const Mat2& q, Vec2 u_des, double u_max, int grid)
        : q_(q), u_des_(u_des), u_max_(u_max), grid_(grid),
          spacing_(2.0 * u_max / (grid - 1)) {
        rows_.resize(static_cast<std::size_t>(grid));
        for (int iy = 0; iy < grid; ++iy) {
            Row& row = rows_[static_cast<std::size_t>(iy)];
            row.y = -u_max + iy * spacing_;
            const double chord_sq = u_max * u_max - row.y * row.y;
            row.chord = chord_sq > 0.0 ? std::sqrt(chord_sq) : 0.0;
            row.dy = row.y - u_des.y;
            const double x_star = u_des.x - (q.m01 / q.m00) * row.dy;
            row.i_star = static_cast<int>(std::lround((x_star + u_max) / spacing_));
        }
    }

    bool best_on_grid(const std::vector<Condition>& conds, Vec2& best_u,
                      double& best_obj) const {
        bool found = false;
        for (const Row& row : rows_) {
            double xlo = -row.chord, xhi = row.chord;
            bool empty = false;
            for (const Condition& cond : conds) {
                const double rest = cond.c.y * row.y + cond.c0;
                if (std::abs(cond.c.x) <= 1e-300) {
                    if (rest < 0.0) {
                        empty = true;
                        break;
                    }
                    continue;
                }
                const double bound = -rest / cond.c.x;
                if (cond.c.x > 0.0) {
                    xlo = std::max(xlo, bound);
                } else {
                    xhi = std::min(xhi, bound);
                }
            }
            if (empty || xlo > xhi) continue;
            // Grid indices covered by [xlo, xhi], with a tiny slack so grid
            // points landing exactly on a boundary stay included.
            const int ilo = std::max(
                0, static_cast<int>(std::ceil((xlo + u_max_) / spacing_ - 1e-9)));
            const int ihi =
                std::min(grid_ - 1,
                         static_cast<int>(std::floor((xhi + u_max_) / spacing_ + 1e-9)));
            if (ilo > ihi) continue;
            const int pivot = std::clamp(row.i_star, ilo, ihi);
            for (int ix = std::max(ilo, pivot - 1); ix <= std::min(ihi, pivot + 1); ++ix) {
                const double x = -u_max_ + ix * spacing_;
                const double dx = x - u_des_.x;
                const double obj = q_.m00 * dx * dx + 2.0 * q_.m01 * dx * row.dy +
                                   q_.m11 * row.dy * row.dy;
                if (!found || obj < best_obj) {
                    found = true;
                    best_obj = obj;
                    best_u = {x, row.y};
                }
            }
        }
        return found;
    }

  private:
    struct Row {
        double y, chord, dy;
        int i_star;
    };

    Mat2 q_;
    Vec2 u_des_;
    double u_max_;
    int grid_;
    double spacing_;
    std::vector<Row> rows_;
};

}  // namespace

FilterResult brute_force_oracle(const AgentState& agent,
                                std::span<const FilterObstacle> obstacles, Vec2 u_des,
                                const FilterConfig& config, const Limits& limits,
                                const OracleParams& params) {
    validate(config);
    const std::size_t n = obstacles.size();
    if (n > 2) {
        throw std::invalid_argument("brute_force_oracle: at most 2 obstacles supported");
    }
    if (params.u_grid < 2 || params.theta_grid < 8) {
        throw std::invalid_argument("brute_force_oracle: grid too coarse");
    }

    const RowScanner scanner(config.q, u_des, limits.u_max, params.u_grid);

    // Feasible theta grid per obstacle, with the barrier inequality reduced
    // inline: h >= 0 filters the grid; the control condition is
    //   s < 0:  s - (n.u) s / u_max + alpha h >= 0
    //   s >= 0: s + alpha h >= 0.
    std::vector<std::vector<ThetaChoice>> choices(n);
    for (std::size_t k = 0; k < n; ++k) {
        const FilterObstacle& obs = obstacles[k];
        for (int i = 0; i < params.theta_grid; ++i) {
            const double theta = -kPi + kTwoPi * i / params.theta_grid;
            const Vec2 nrm{std::cos(theta), std::sin(theta)};
            const double s = dot(nrm, agent.v - obs.state.velocity);
            const double gap = dot(nrm, agent.p - obs.state.position) -
                               obs.support.total_distance(theta);
            const double brake = s < 0.0 ? s * s / (2.0 * limits.u_max) : 0.0;
            const double h = gap - brake;
            if (h < config.theta_select_margin) continue;
            Condition cond{{0.0, 0.0}, s + config.alpha_gain * h - config.cbf_margin};
            if (s < 0.0) cond.c = (-s / limits.u_max) * nrm;
            choices[k].push_back({theta, cond});
        }
        if (choices[k].empty()) return {};  // Infeasible
    }

    FilterResult best;
    std::vector<Condition> conds;
    const auto consider = [&](const std::vector<const ThetaChoice*>& picked) {
        conds.clear();
        for (const ThetaChoice* c : picked) conds.push_back(c->cond);
        Vec2 u;
        double obj = std::numeric_limits<double>::infinity();
        if (!scanner.best_on_grid(conds, u, obj)) return;
        if (obj < best.objective) {
            best.u = u;
            best.objective = obj;
            best.status = FilterStatus::Optimal;
            best.thetas.theta.clear();
            best.thetas.feasible.clear();
            for (const ThetaChoice* c : picked) {
                best.thetas.theta.push_back(c->theta);
                best.thetas.feasible.push_back(true);
            }
        }
    };

    if (n == 0) {
        consider({});
    } else if (n == 1) {
        std::vector<const ThetaChoice*> picked(1);
        for (const ThetaChoice& a : choices[0]) {
            picked[0] = &a;
            consider(picked);
        }
    } else {
        std::vector<const ThetaChoice*> picked(2);
        for (const ThetaChoice& a : choices[0]) {
            for (const ThetaChoice& b : choices[1]) {
                picked[0] = &a;
                picked[1] = &b;
                consider(picked);
            }
        }
    }
    return best;
}

}  // namespace hcbf
