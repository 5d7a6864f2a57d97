// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Usage: hcbf_acceptance <scenario-dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../instances.hpp"
#include "../oracles.hpp"
#include "hcbf/filter.hpp"
#include "hcbf/sim.hpp"
#include "scenario_io.hpp"

using namespace hcbf;
using hcbf::testing::Rng;

namespace {

struct Criterion {
    std::string name;
    double time_limit_s;
    std::function<bool(std::string&)> run;
};

bool approx_leq(double a, double b, double tol) { return a <= b + tol; }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::string g_scenario_dir;

Scenario load(const std::string& name) {
    return cli::load_scenario(g_scenario_dir + "/" + name);
}

// --- 1. fixed-theta solver exactness ---------------------------------------
bool criterion_qp_exactness(std::string& detail) {
    int feasible = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto inst = testing::random_qp_instance(0xACC00001ULL + trial);
        const QpSolution sol = solve_ball_qp(inst.q, inst.u_des, inst.u_max, inst.cons);
        const auto grid =
            testing::qp_grid_rowwise(inst.q, inst.u_des, inst.u_max, inst.cons, 2001);
        if (!sol.feasible) {
            if (grid.feasible) {
                detail = "solver infeasible but grid found a point, trial " +
                         std::to_string(trial);
                return false;
            }
            continue;
        }
        ++feasible;
        if (!approx_leq(sol.objective, grid.objective, 1e-3)) {
            detail = "objective above grid oracle at trial " + std::to_string(trial);
            return false;
        }
        if (norm(sol.u) > inst.u_max + 1e-9) {
            detail = "control magnitude violation at trial " + std::to_string(trial);
            return false;
        }
        for (const AffineConstraint& c : inst.cons) {
            if (dot(c.c_u, sol.u) + c.c_0 < -1e-9) {
                detail = "constraint violation at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    detail = std::to_string(feasible) + "/1000 feasible instances";
    return true;
}

// --- 2. joint optimizer vs dense oracle ------------------------------------
bool criterion_joint_oracle(std::string& detail) {
    double max_gap = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing::random_filter_instance(0xACC00002ULL + trial);
        const FilterResult fast = optimize(inst.agent, inst.obstacles, inst.u_des,
                                           inst.config, inst.limits, nullptr);
        const FilterResult slow = brute_force_oracle(inst.agent, inst.obstacles,
                                                     inst.u_des, inst.config, inst.limits);
        const bool fast_ok = fast.status != FilterStatus::Infeasible;
        const bool slow_ok = slow.status != FilterStatus::Infeasible;
        if (fast_ok != slow_ok) {
            detail = "feasibility disagreement at trial " + std::to_string(trial);
            return false;
        }
        if (!fast_ok) continue;
        max_gap = std::max(max_gap, std::abs(fast.objective - slow.objective));
    }
    detail = "max objective gap " + sci(max_gap);
    return max_gap <= 1e-3;
}

// --- 3. Example-1 analogue: straight flyby ----------------------------------
bool criterion_flyby(std::string& detail) {
    Scenario scenario = load("flyby.json");
    scenario.filter.mode = FilterMode::LeastRestrictive;
    const TrajectoryLog lr = run_scenario(scenario);
    scenario.filter.mode = FilterMode::Orthogonal;
    const TrajectoryLog orth = run_scenario(scenario);
    if (lr.status != RunStatus::Success || orth.status != RunStatus::Success) {
        detail = "a run failed";
        return false;
    }
    const Metrics lr_m = metrics(lr, scenario);
    if (lr_m.intervention_integral > 1e-6) {
        detail = "least-restrictive intervened: integral " +
                 sci(lr_m.intervention_integral);
        return false;
    }
    // Orthogonal must intervene on a nonempty interval strictly before the
    // closest approach, and not after.
    std::size_t closest_row = 0;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < orth.rows.size(); ++i) {
        if (orth.rows[i].clearance[0] < closest) {
            closest = orth.rows[i].clearance[0];
            closest_row = i;
        }
    }
    int before = 0, after = 0;
    for (std::size_t i = 0; i < orth.rows.size(); ++i) {
        if (norm(orth.rows[i].u - orth.rows[i].u_des) > 1e-9) {
            (i < closest_row ? before : after) += 1;
        }
    }
    detail = std::to_string(before) + " intervention rows before closest approach, " +
             std::to_string(after) + " after";
    return before > 0 && after == 0;
}

// --- 4. Example-2 analogue: blocked goal ------------------------------------
bool criterion_blocked_goal(std::string& detail) {
    Scenario scenario = load("blocked_goal.json");
    scenario.filter.mode = FilterMode::LeastRestrictive;
    const TrajectoryLog lr = run_scenario(scenario);
    scenario.filter.mode = FilterMode::Orthogonal;
    const TrajectoryLog orth = run_scenario(scenario);
    if (lr.status != RunStatus::Success || orth.status != RunStatus::Success) {
        detail = "a run failed";
        return false;
    }
    const Metrics lr_m = metrics(lr, scenario);
    const Metrics orth_m = metrics(orth, scenario);
    if (!lr_m.time_to_goal_1m || !orth_m.time_to_goal_1m) {
        detail = "a mode never reached 1 m of the goal";
        return false;
    }
    detail = "time-to-goal " + std::to_string(*lr_m.time_to_goal_1m) + " s vs " +
             std::to_string(*orth_m.time_to_goal_1m) + " s; intervention " +
             std::to_string(lr_m.intervention_integral) + " vs " +
             std::to_string(orth_m.intervention_integral);
    return *lr_m.time_to_goal_1m <= 0.85 * *orth_m.time_to_goal_1m &&
           lr_m.intervention_integral < orth_m.intervention_integral;
}

// --- 5. Example-3 analogue: polygons + moving ellipse ------------------------
bool criterion_mixed_field(std::string& detail) {
    Scenario scenario = load("mixed_field.json");
    scenario.filter.mode = FilterMode::LeastRestrictive;
    const TrajectoryLog lr = run_scenario(scenario);
    scenario.filter.mode = FilterMode::Orthogonal;
    const TrajectoryLog orth = run_scenario(scenario);
    if (lr.status != RunStatus::Success || orth.status != RunStatus::Success) {
        detail = "a run failed";
        return false;
    }
    double min_clearance = std::numeric_limits<double>::infinity();
    for (const TrajectoryLog* log : {&lr, &orth}) {
        for (const LogRow& row : log->rows) {
            for (double c : row.clearance) min_clearance = std::min(min_clearance, c);
        }
    }
    const Metrics lr_m = metrics(lr, scenario);
    const Metrics orth_m = metrics(orth, scenario);
    detail = "min clearance " + sci(min_clearance) + "; intervention " +
             std::to_string(lr_m.intervention_integral) + " vs " +
             std::to_string(orth_m.intervention_integral);
    return min_clearance >= -1e-6 &&
           lr_m.intervention_integral <= orth_m.intervention_integral;
}

// --- 6. ellipse support closed form ------------------------------------------
bool criterion_ellipse_support(std::string& detail) {
    const testing::EllipseSupportGrid grid(1'000'000);
    Rng rng(0xACC00006ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double b = rng.uniform(0.2, 2.0);
        const double a = b + rng.uniform(0.0, 3.0);
        const double beta = rng.uniform(-kPi, kPi);
        const double theta = rng.uniform(-kTwoPi, kTwoPi);
        const auto shape = ObstacleShape::ellipse(a, b, beta);
        const double closed = support_distance(shape, theta);
        const double by_grid = grid.eval(a, b, beta, theta);
        const double analytic = std::sqrt(a * a * std::pow(std::cos(theta - beta), 2) +
                                          b * b * std::pow(std::sin(theta - beta), 2));
        worst = std::max(worst, std::abs(closed - by_grid));
        worst = std::max(worst, std::abs(closed - analytic));
    }
    detail = "worst deviation " + sci(worst);
    return worst <= 1e-9;
}

// --- 7. Fourier conservativeness ----------------------------------------------
bool criterion_fourier_conservative(std::string& detail) {
    Rng rng(0xACC00007ULL);
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec2> pts;
        const int n = rng.uniform_int(4, 10);
        for (int i = 0; i < n; ++i) {
            const double phi = kTwoPi * i / n + rng.uniform(0.0, kTwoPi / n * 0.8);
            const double r = rng.uniform(0.4, 2.0);
            pts.push_back({r * std::cos(phi), r * std::sin(phi)});
        }
        const auto poly = ObstacleShape::polygon(pts);
        const SupportModel model = fit_fourier(poly, 16);
        for (int i = 0; i < 7200; ++i) {
            const double theta = kTwoPi * i / 7200.0;
            const double slack =
                model.shape_distance(theta) - support_distance(poly, theta);
            worst = std::min(worst, slack);
            if (slack < -1e-9) {
                detail = "violated by " + std::to_string(-slack) + " at trial " +
                         std::to_string(trial);
                return false;
            }
        }
    }
    detail = "min slack " + sci(worst);
    return true;
}

// --- 8. dominance over the orthogonal assignment ------------------------------
bool criterion_dominance(std::string& detail) {
    int used = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint64_t trial = 0; used < 200 && trial < 2000; ++trial) {
        const auto inst = testing::random_filter_instance(0xACC00008ULL + trial);
        double orth;
        try {
            orth = orthogonal_theta(inst.agent, inst.obstacles[0].state);
        } catch (const InsideHullError&) {
            continue;
        }
        if (h_value(orth, inst.agent, inst.obstacles[0].state, inst.obstacles[0].support,
                    inst.limits) < 0.0) {
            continue;
        }
        ThetaAssignment orth_assign;
        orth_assign.theta = {orth};
        orth_assign.feasible = {true};
        const FilterResult base =
            solve_fixed_theta(inst.agent, inst.obstacles, orth_assign, inst.u_des,
                              inst.config, inst.limits);
        if (base.status != FilterStatus::Optimal) continue;
        const FilterResult opt = optimize(inst.agent, inst.obstacles, inst.u_des,
                                          inst.config, inst.limits, nullptr);
        if (opt.status != FilterStatus::Optimal) {
            detail = "optimize infeasible where orthogonal was feasible";
            return false;
        }
        worst = std::max(worst, opt.objective - base.objective);
        ++used;
    }
    detail = std::to_string(used) + " states, worst objective excess " + sci(worst);
    return used == 200 && worst <= 1e-9;
}

// --- 9. derivative consistency -------------------------------------------------
bool criterion_derivative(std::string& detail) {
    Rng rng(0xACC00009ULL);
    const Limits limits{1.0};
    const AlphaFunction alpha{1.0};
    const double eps = 1e-6;
    int checked = 0;
    double worst = 0.0;
    while (checked < 1000) {
        const double radius = rng.uniform(0.3, 1.5);
        const ObstacleState obs{ObstacleShape::disc(radius),
                                {rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)}};
        const SupportModel support = exact_support(obs.shape, 0.2);
        const double dist = radius + 0.2 + rng.uniform(0.5, 3.0);
        const double dir = rng.uniform(0.0, kTwoPi);
        const AgentState agent{
            obs.position + Vec2{dist * std::cos(dir), dist * std::sin(dir)},
            {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        const double theta = rng.uniform(-kPi, kPi);
        const Vec2 u{rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)};

        const double h0 = h_value(theta, agent, obs, support, limits);
        if (h0 < 0.01) continue;
        const AffineConstraint c =
            cbf_constraint(theta, agent, obs, support, alpha, limits);
        const double analytic = dot(c.c_u, u) + c.c_0 - alpha.gain * h0;
        if (std::abs(analytic) < 1e-3) continue;
        const double s = dot(unit_normal(theta), agent.v - obs.velocity);
        if (std::abs(s) < 10.0 * eps * norm(u)) continue;  // branch flip inside stencil

        const auto advance = [&](double t) {
            const AgentState a{agent.p + t * agent.v + (0.5 * t * t) * u,
                               agent.v + t * u};
            ObstacleState o = obs;
            o.position += t * obs.velocity;
            return h_value(theta, a, o, support, limits);
        };
        const double fd = (advance(eps) - advance(-eps)) / (2.0 * eps);
        worst = std::max(worst, std::abs(fd - analytic) / std::abs(analytic));
        ++checked;
    }
    detail = "worst relative error " + sci(worst);
    return worst < 1e-4;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: hcbf_acceptance <scenario-dir>\n");
        return 2;
    }
    g_scenario_dir = argv[1];

    const std::vector<Criterion> criteria = {
        {"fixed-theta solver matches the 2001^2 grid oracle (1000 instances)", 30.0,
         criterion_qp_exactness},
        {"joint optimizer within 1e-3 of the (u x theta)-grid oracle (100 instances)",
         60.0, criterion_joint_oracle},
        {"flyby: least-restrictive never intervenes, orthogonal does before closest "
         "approach", 5.0, criterion_flyby},
        {"blocked goal: least-restrictive >= 15% sooner with less intervention", 10.0,
         criterion_blocked_goal},
        {"mixed field: both modes safe, least-restrictive intervenes no more", 20.0,
         criterion_mixed_field},
        {"ellipse support closed form matches 1e6-point maximization to 1e-9", 10.0,
         criterion_ellipse_support},
        {"Fourier support stays conservative on a 7200-point grid (20 polygons)", 10.0,
         criterion_fourier_conservative},
        {"least-restrictive objective never exceeds the orthogonal one (200 states)",
         30.0, criterion_dominance},
        {"hdot matches central finite differences to 1e-4 (1000 states)", 10.0,
         criterion_derivative},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        const bool in_time = elapsed < criteria[i].time_limit_s;
        if (!in_time) {
            detail += " [over time limit " + std::to_string(criteria[i].time_limit_s) +
                      " s]";
        }
        const bool pass = ok && in_time;
        std::printf("[%zu/9] %s  %s (%.2f s) %s\n", i + 1, pass ? "PASS" : "FAIL",
                    criteria[i].name.c_str(), elapsed,
                    detail.empty() ? "" : ("- " + detail).c_str());
        if (!pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
