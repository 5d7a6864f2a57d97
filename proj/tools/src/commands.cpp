#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>

#include "csv.hpp"
#include "scenario_io.hpp"
#include "svg.hpp"

namespace hcbf::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const char* status_name(RunStatus status) {
    switch (status) {
        case RunStatus::Success: return "success";
        case RunStatus::ClearanceViolation: return "clearance-violation";
        case RunStatus::InfeasibleHalt: return "infeasible-halt";
    }
    return "success";
}

ordered_json metrics_json(const TrajectoryLog& log, const Metrics& m,
                          const std::string& mode) {
    ordered_json j;
    j["mode"] = mode;
    j["status"] = status_name(log.status);
    j["rows"] = log.rows.size();
    j["min_clearance"] = m.min_clearance;
    if (m.time_to_goal_1m) {
        j["time_to_goal_1m"] = *m.time_to_goal_1m;
    } else {
        j["time_to_goal_1m"] = nullptr;
    }
    j["intervention_integral"] = m.intervention_integral;
    j["intervention_duration"] = m.intervention_duration;
    if (!log.message.empty()) j["message"] = log.message;
    return j;
}

std::vector<std::string> write_run_svgs(const Scenario& scenario,
                                        const TrajectoryLog& log,
                                        const std::string& dir,
                                        const std::string& label) {
    std::vector<std::string> paths;
    const auto emit = [&](const std::string& name, const std::string& content) {
        const std::string path = (fs::path(dir) / name).string();
        write_file_atomic(path, content);
        paths.push_back(path);
    };

    emit("plan.svg", plan_view_svg(scenario, {&log}, {label}));

    const std::size_t n = scenario.obstacles.size();
    std::vector<Series> constraint_series;
    for (std::size_t k = 0; k < n; ++k) {
        Series s;
        s.label = "obstacle " + std::to_string(k);
        s.color = k == 0 ? "#1f77b4" : (k == 1 ? "#d62728" : "#2ca02c");
        for (const LogRow& row : log.rows) {
            s.t.push_back(row.t);
            s.value.push_back(row.constraint[k]);
        }
        constraint_series.push_back(std::move(s));
    }
    emit("constraint.svg",
         timeseries_svg("barrier constraint", "hdot + alpha(h)", constraint_series));

    Series dev{label, "#1f77b4", false, {}, {}};
    Series dist{label, "#1f77b4", false, {}, {}};
    for (const LogRow& row : log.rows) {
        dev.t.push_back(row.t);
        dev.value.push_back(norm(row.u - row.u_des));
        dist.t.push_back(row.t);
        dist.value.push_back(norm(row.p - scenario.goal));
    }
    emit("deviation.svg", timeseries_svg("control deviation", "|u - u_des|", {dev}));
    emit("goal_distance.svg", timeseries_svg("goal distance", "|p - goal|", {dist}));
    return paths;
}

RunArtifacts write_run_artifacts(const Scenario& scenario, const TrajectoryLog& log,
                                 const std::string& dir, bool svg) {
    RunArtifacts artifacts;
    artifacts.status = log.status;
    const std::string mode = mode_name(scenario.filter.mode);

    artifacts.csv_path = (fs::path(dir) / "trajectory.csv").string();
    write_file_atomic(artifacts.csv_path, trajectory_csv(log));

    const Metrics m = metrics(log, scenario);
    artifacts.metrics_path = (fs::path(dir) / "metrics.json").string();
    write_file_atomic(artifacts.metrics_path, metrics_json(log, m, mode).dump(2) + "\n");

    if (svg) artifacts.svg_paths = write_run_svgs(scenario, log, dir, mode);
    return artifacts;
}

std::string format_cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%10.4f", v);
    return buf;
}

// splitmix64, also the per-instance seed mixer for oracle-check.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    double uniform() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int pick(int n) { return static_cast<int>(uniform() * n) % n; }

  private:
    std::uint64_t state_;
};

}  // namespace

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("HCBF_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "out";
}

RunArtifacts cmd_run(const RunOptions& options) {
    Scenario scenario = load_scenario(options.scenario_path);
    if (options.mode) scenario.filter.mode = parse_mode(*options.mode);
    const TrajectoryLog log = run_scenario(scenario);
    return write_run_artifacts(scenario, log, options.out_dir, options.svg);
}

CompareArtifacts cmd_compare(const CompareOptions& options) {
    const Scenario base = load_scenario(options.scenario_path);
    Scenario lr = base;
    lr.filter.mode = FilterMode::LeastRestrictive;
    Scenario orth = base;
    orth.filter.mode = FilterMode::Orthogonal;

    // Independent runs; safe to execute concurrently.
    auto lr_future = std::async(std::launch::async, [&] { return run_scenario(lr); });
    const TrajectoryLog orth_log = run_scenario(orth);
    const TrajectoryLog lr_log = lr_future.get();

    CompareArtifacts artifacts;
    artifacts.least_restrictive = write_run_artifacts(
        lr, lr_log, (fs::path(options.out_dir) / "least-restrictive").string(),
        options.svg);
    artifacts.orthogonal = write_run_artifacts(
        orth, orth_log, (fs::path(options.out_dir) / "orthogonal").string(), options.svg);

    const Metrics lr_m = metrics(lr_log, lr);
    const Metrics orth_m = metrics(orth_log, orth);

    ordered_json j;
    j["scenario"] = options.scenario_path;
    j["least_restrictive"] = metrics_json(lr_log, lr_m, "least-restrictive");
    j["orthogonal"] = metrics_json(orth_log, orth_m, "orthogonal");
    artifacts.table_path = (fs::path(options.out_dir) / "compare.json").string();
    write_file_atomic(artifacts.table_path, j.dump(2) + "\n");

    std::string table;
    table += "metric                     least-restrictive   orthogonal\n";
    table += "time to 1 m of goal [s]  ";
    table += lr_m.time_to_goal_1m ? format_cell(*lr_m.time_to_goal_1m) : "      none";
    table += "          ";
    table += orth_m.time_to_goal_1m ? format_cell(*orth_m.time_to_goal_1m) : "      none";
    table += "\n";
    double lr_min = std::numeric_limits<double>::infinity();
    double orth_min = std::numeric_limits<double>::infinity();
    for (double c : lr_m.min_clearance) lr_min = std::min(lr_min, c);
    for (double c : orth_m.min_clearance) orth_min = std::min(orth_min, c);
    if (!base.obstacles.empty()) {
        table += "min clearance [m]        " + format_cell(lr_min) + "          " +
                 format_cell(orth_min) + "\n";
    }
    table += "int |u - u_des| dt       " + format_cell(lr_m.intervention_integral) +
             "          " + format_cell(orth_m.intervention_integral) + "\n";
    table += "intervention time [s]    " + format_cell(lr_m.intervention_duration) +
             "          " + format_cell(orth_m.intervention_duration) + "\n";
    artifacts.table_text = table;

    if (options.svg) {
        const auto emit = [&](const std::string& name, const std::string& content) {
            const std::string path = (fs::path(options.out_dir) / name).string();
            write_file_atomic(path, content);
            artifacts.overlay_svg_paths.push_back(path);
        };
        emit("overlay_plan.svg", plan_view_svg(base, {&lr_log, &orth_log},
                                               {"least-restrictive", "orthogonal"}));
        Series lr_dev{"least-restrictive", "#1f77b4", false, {}, {}};
        Series orth_dev{"orthogonal", "#d62728", true, {}, {}};
        for (const LogRow& row : lr_log.rows) {
            lr_dev.t.push_back(row.t);
            lr_dev.value.push_back(norm(row.u - row.u_des));
        }
        for (const LogRow& row : orth_log.rows) {
            orth_dev.t.push_back(row.t);
            orth_dev.value.push_back(norm(row.u - row.u_des));
        }
        emit("overlay_deviation.svg",
             timeseries_svg("control deviation", "|u - u_des|", {lr_dev, orth_dev}));
        Series lr_dist{"least-restrictive", "#1f77b4", false, {}, {}};
        Series orth_dist{"orthogonal", "#d62728", true, {}, {}};
        for (const LogRow& row : lr_log.rows) {
            lr_dist.t.push_back(row.t);
            lr_dist.value.push_back(norm(row.p - base.goal));
        }
        for (const LogRow& row : orth_log.rows) {
            orth_dist.t.push_back(row.t);
            orth_dist.value.push_back(norm(row.p - base.goal));
        }
        emit("overlay_goal_distance.svg",
             timeseries_svg("goal distance", "|p - goal|", {lr_dist, orth_dist}));
    }
    return artifacts;
}

FitSupportArtifacts cmd_fit_support(const FitSupportOptions& options) {
    const ObstacleShape shape = load_shape(options.shape_path);
    const SupportModel model = [&] {
        try {
            return fit_fourier(shape, options.n_terms, options.grid);
        } catch (const std::invalid_argument& e) {
            throw ScenarioError(e.what());
        }
    }();

    FitSupportArtifacts artifacts;
    artifacts.margin = model.margin();
    artifacts.conservative = true;

    const int dense = 7200;
    std::vector<double> theta(dense), exact(dense), fitted(dense);
    for (int i = 0; i < dense; ++i) {
        theta[i] = kTwoPi * i / dense;
        exact[i] = support_distance(shape, theta[i]);
        fitted[i] = model.shape_distance(theta[i]);  // tilde + margin
        artifacts.max_residual = std::max(
            artifacts.max_residual, std::abs(exact[i] - model.fourier_value(theta[i])));
        if (fitted[i] < exact[i] - 1e-9) artifacts.conservative = false;
    }

    ordered_json j;
    j["shape"] = serialize_shape(shape);
    j["n_terms"] = options.n_terms;
    j["grid"] = options.grid;
    j["a0"] = model.coeff_a0();
    j["a"] = model.coeffs_cos();
    j["b"] = model.coeffs_sin();
    j["margin"] = model.margin();
    j["max_residual"] = artifacts.max_residual;
    j["conservative"] = artifacts.conservative;
    artifacts.report_path = (fs::path(options.out_dir) / "support_fit.json").string();
    write_file_atomic(artifacts.report_path, j.dump(2) + "\n");

    if (options.svg) {
        artifacts.svg_path = (fs::path(options.out_dir) / "support_fit.svg").string();
        write_file_atomic(*artifacts.svg_path, support_polar_svg(theta, exact, fitted));
    }
    return artifacts;
}

OracleInstance make_oracle_instance(std::uint64_t seed) {
    SplitMix rng(mix64(seed));
    OracleInstance inst;
    inst.limits.u_max = 1.0;
    inst.config.alpha_gain = rng.uniform(0.5, 2.0);
    // Q = R diag(l1, l2) R^T
    {
        const double l1 = rng.uniform(0.5, 2.5);
        const double l2 = rng.uniform(0.5, 2.5);
        const double phi = rng.uniform(0.0, kPi);
        const double c = std::cos(phi), s = std::sin(phi);
        inst.config.q = {l1 * c * c + l2 * s * s, (l1 - l2) * c * s, (l1 - l2) * c * s,
                         l1 * s * s + l2 * c * c};
    }
    inst.agent.p = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    inst.agent.v = {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
    inst.u_des = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};

    ObstacleShape shape = [&]() -> ObstacleShape {
        switch (rng.pick(3)) {
            case 0:
                return ObstacleShape::disc(rng.uniform(0.3, 1.2));
            case 1: {
                const double b = rng.uniform(0.3, 1.0);
                return ObstacleShape::ellipse(b + rng.uniform(0.0, 1.2), b,
                                              rng.uniform(-kPi, kPi));
            }
            default: {
                std::vector<Vec2> pts;
                const int sides = 3 + rng.pick(6);
                for (int i = 0; i < sides; ++i) {
                    const double phi =
                        kTwoPi * i / sides + rng.uniform(0.0, 0.6 * kTwoPi / sides);
                    const double r = rng.uniform(0.4, 1.3);
                    pts.push_back({r * std::cos(phi), r * std::sin(phi)});
                }
                return ObstacleShape::polygon(pts);
            }
        }
    }();

    const double agent_radius = rng.uniform(0.1, 0.4);
    // Annulus placement: beyond the worst-case braking distance plus margin,
    // so at least one hyperplane keeps the initial state feasible.
    const double rel_speed = norm(inst.agent.v) + 0.8;
    const double brake = rel_speed * rel_speed / (2.0 * inst.limits.u_max);
    const double dist =
        agent_radius + shape.max_extent() + brake + rng.uniform(0.3, 2.0);
    const double dir = rng.uniform(0.0, kTwoPi);
    const Vec2 position = inst.agent.p + Vec2{dist * std::cos(dir), dist * std::sin(dir)};
    const Vec2 velocity{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    SupportModel support = rng.uniform() < 0.5
                               ? exact_support(shape, agent_radius)
                               : fit_fourier(shape, 16, 720, agent_radius);
    inst.obstacles.push_back({{std::move(shape), position, velocity}, std::move(support)});
    return inst;
}

OracleCheckReport cmd_oracle_check(const OracleCheckOptions& options) {
    OracleCheckReport report;
    report.count = options.count;
    int disagreements = 0;
    for (int i = 0; i < options.count; ++i) {
        const std::uint64_t seed =
            options.seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL;
        const OracleInstance inst = make_oracle_instance(seed);
        const FilterResult fast = optimize(inst.agent, inst.obstacles, inst.u_des,
                                           inst.config, inst.limits, nullptr);
        const FilterResult slow = brute_force_oracle(inst.agent, inst.obstacles,
                                                     inst.u_des, inst.config, inst.limits);
        const bool fast_ok = fast.status != FilterStatus::Infeasible;
        const bool slow_ok = slow.status != FilterStatus::Infeasible;
        if (fast_ok != slow_ok) {
            ++disagreements;
            continue;
        }
        if (!fast_ok) continue;
        ++report.compared;
        report.max_gap = std::max(report.max_gap, std::abs(fast.objective - slow.objective));
    }
    report.pass = report.max_gap <= 1e-3 && disagreements == 0;

    ordered_json j;
    j["seed"] = options.seed;
    j["count"] = options.count;
    j["compared"] = report.compared;
    j["feasibility_disagreements"] = disagreements;
    j["max_objective_gap"] = report.max_gap;
    j["tolerance"] = 1e-3;
    j["pass"] = report.pass;
    report.report_path = (fs::path(options.out_dir) / "oracle_check.json").string();
    write_file_atomic(report.report_path, j.dump(2) + "\n");
    return report;
}

}  // namespace hcbf::cli
