#include "scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

namespace hcbf::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!ok.contains(key)) fail(path, "unknown key \"" + key + "\"");
    }
}

double get_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& path, const char* key,
                     double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj, path, key);
}

int get_int_or(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

Vec2 get_vec2(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing");
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path + "." + key, "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Vec2 get_vec2_or(const json& obj, const std::string& path, const char* key, Vec2 fallback) {
    if (!obj.contains(key)) return fallback;
    return get_vec2(obj, path, key);
}

ordered_json vec2_json(Vec2 v) { return ordered_json::array({v.x, v.y}); }

}  // namespace

FilterMode parse_mode(const std::string& name) {
    if (name == "orthogonal") return FilterMode::Orthogonal;
    if (name == "least-restrictive") return FilterMode::LeastRestrictive;
    if (name == "fixed-theta") return FilterMode::FixedTheta;
    throw ScenarioError(
        "filter.mode: expected \"orthogonal\", \"least-restrictive\" or \"fixed-theta\", "
        "got \"" +
        name + "\"");
}

std::string mode_name(FilterMode mode) {
    switch (mode) {
        case FilterMode::Orthogonal: return "orthogonal";
        case FilterMode::LeastRestrictive: return "least-restrictive";
        case FilterMode::FixedTheta: return "fixed-theta";
    }
    return "least-restrictive";
}

ObstacleShape parse_shape(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        fail(path + ".type", "missing shape type");
    }
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "disc") {
            check_keys(j, path, {"type", "radius"});
            return ObstacleShape::disc(get_number(j, path, "radius"));
        }
        if (type == "ellipse") {
            check_keys(j, path, {"type", "a", "b", "beta"});
            return ObstacleShape::ellipse(get_number(j, path, "a"),
                                          get_number(j, path, "b"),
                                          get_number_or(j, path, "beta", 0.0));
        }
        if (type == "polygon") {
            check_keys(j, path, {"type", "vertices"});
            if (!j.contains("vertices") || !j.at("vertices").is_array()) {
                fail(path + ".vertices", "expected an array of [x, y]");
            }
            std::vector<Vec2> vertices;
            for (const json& v : j.at("vertices")) {
                if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
                    !v[1].is_number()) {
                    fail(path + ".vertices", "expected [x, y] entries");
                }
                vertices.push_back({v[0].get<double>(), v[1].get<double>()});
            }
            return ObstacleShape::polygon(std::move(vertices));
        }
        if (type == "general_radial") {
            check_keys(j, path, {"type", "samples"});
            if (!j.contains("samples") || !j.at("samples").is_array()) {
                fail(path + ".samples", "expected an array of [phi, r]");
            }
            std::vector<RadialSample> samples;
            for (const json& v : j.at("samples")) {
                if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
                    !v[1].is_number()) {
                    fail(path + ".samples", "expected [phi, r] entries");
                }
                samples.push_back({v[0].get<double>(), v[1].get<double>()});
            }
            return ObstacleShape::general_radial(std::move(samples));
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".type", "unknown shape type \"" + type + "\"");
}

ordered_json serialize_shape(const ObstacleShape& shape) {
    ordered_json j;
    if (const auto* d = std::get_if<Disc>(&shape.variant())) {
        j["type"] = "disc";
        j["radius"] = d->radius;
    } else if (const auto* e = std::get_if<Ellipse>(&shape.variant())) {
        j["type"] = "ellipse";
        j["a"] = e->semi_major;
        j["b"] = e->semi_minor;
        j["beta"] = e->rotation;
    } else if (const auto* p = std::get_if<Polygon>(&shape.variant())) {
        j["type"] = "polygon";
        j["vertices"] = ordered_json::array();
        for (Vec2 v : p->vertices) j["vertices"].push_back(vec2_json(v));
    } else {
        const auto& g = std::get<GeneralRadial>(shape.variant());
        j["type"] = "general_radial";
        j["samples"] = ordered_json::array();
        for (const RadialSample& s : g.samples) {
            j["samples"].push_back(ordered_json::array({s.angle, s.radius}));
        }
    }
    return j;
}

Scenario parse_scenario(const json& j) {
    check_keys(j, "scenario",
               {"agent", "goal", "gains", "limits", "sim", "filter", "obstacles"});
    Scenario s;

    if (!j.contains("agent")) fail("agent", "missing");
    const json& agent = j.at("agent");
    check_keys(agent, "agent", {"p", "v", "radius"});
    s.agent.p = get_vec2(agent, "agent", "p");
    s.agent.v = get_vec2_or(agent, "agent", "v", {0.0, 0.0});
    s.agent_radius = get_number_or(agent, "agent", "radius", 0.0);

    s.goal = get_vec2(j, "scenario", "goal");

    if (j.contains("gains")) {
        const json& gains = j.at("gains");
        check_keys(gains, "gains", {"kp", "kd"});
        s.kp = get_number_or(gains, "gains", "kp", 1.0);
        s.kd = get_number_or(gains, "gains", "kd", 2.0);
    }

    if (!j.contains("limits")) fail("limits", "missing");
    const json& limits = j.at("limits");
    check_keys(limits, "limits", {"u_max"});
    s.limits.u_max = get_number(limits, "limits", "u_max");

    if (!j.contains("sim")) fail("sim", "missing");
    const json& sim = j.at("sim");
    check_keys(sim, "sim", {"dt", "duration", "theta_update_every"});
    s.dt = get_number(sim, "sim", "dt");
    s.duration = get_number(sim, "sim", "duration");
    s.theta_update_every = get_int_or(sim, "sim", "theta_update_every", 1);

    if (j.contains("filter")) {
        const json& filter = j.at("filter");
        check_keys(filter, "filter",
                   {"mode", "alpha_gain", "q", "theta_grid", "refine_tol", "max_sweeps",
                    "cbf_margin", "theta_select_margin", "thetas"});
        if (filter.contains("mode")) {
            if (!filter.at("mode").is_string()) fail("filter.mode", "expected a string");
            s.filter.mode = parse_mode(filter.at("mode").get<std::string>());
        }
        s.filter.alpha_gain = get_number_or(filter, "filter", "alpha_gain", 1.0);
        s.filter.theta_grid = get_int_or(filter, "filter", "theta_grid", 360);
        s.filter.refine_tol = get_number_or(filter, "filter", "refine_tol", 1e-6);
        s.filter.max_sweeps = get_int_or(filter, "filter", "max_sweeps", 5);
        s.filter.cbf_margin = get_number_or(filter, "filter", "cbf_margin", 0.0);
        s.filter.theta_select_margin =
            get_number_or(filter, "filter", "theta_select_margin", 0.0);
        if (filter.contains("q")) {
            const json& q = filter.at("q");
            if (!q.is_array() || q.size() != 2 || !q[0].is_array() || q[0].size() != 2 ||
                !q[1].is_array() || q[1].size() != 2 || !q[0][0].is_number() ||
                !q[0][1].is_number() || !q[1][0].is_number() || !q[1][1].is_number()) {
                fail("filter.q", "expected [[qxx, qxy], [qyx, qyy]]");
            }
            s.filter.q = {q[0][0].get<double>(), q[0][1].get<double>(),
                          q[1][0].get<double>(), q[1][1].get<double>()};
        }
        if (filter.contains("thetas")) {
            if (!filter.at("thetas").is_array()) fail("filter.thetas", "expected an array");
            for (const json& v : filter.at("thetas")) {
                if (!v.is_number()) fail("filter.thetas", "expected numbers");
                s.filter.fixed_thetas.push_back(v.get<double>());
            }
        }
    }

    if (!j.contains("obstacles") || !j.at("obstacles").is_array()) {
        fail("obstacles", "expected an array");
    }
    std::size_t index = 0;
    for (const json& o : j.at("obstacles")) {
        const std::string path = "obstacles[" + std::to_string(index++) + "]";
        check_keys(o, path, {"shape", "pose", "velocity", "support"});
        if (!o.contains("shape")) fail(path + ".shape", "missing");
        ScenarioObstacle obs{parse_shape(o.at("shape"), path + ".shape"),
                             get_vec2(o, path, "pose"),
                             get_vec2_or(o, path, "velocity", {0.0, 0.0}),
                             {}};
        if (o.contains("support")) {
            const json& sup = o.at("support");
            check_keys(sup, path + ".support", {"model", "n_terms", "grid"});
            if (!sup.contains("model") || !sup.at("model").is_string()) {
                fail(path + ".support.model", "expected \"exact\" or \"fourier\"");
            }
            const std::string model = sup.at("model").get<std::string>();
            if (model == "fourier") {
                obs.support.fourier = true;
            } else if (model != "exact") {
                fail(path + ".support.model", "expected \"exact\" or \"fourier\"");
            }
            obs.support.n_terms = get_int_or(sup, path + ".support", "n_terms", 16);
            obs.support.grid_points = get_int_or(sup, path + ".support", "grid", 720);
        }
        s.obstacles.push_back(std::move(obs));
    }

    try {
        validate(s);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    return s;
}

ordered_json serialize_scenario(const Scenario& s) {
    ordered_json j;
    j["agent"] = {{"p", vec2_json(s.agent.p)},
                  {"v", vec2_json(s.agent.v)},
                  {"radius", s.agent_radius}};
    j["goal"] = vec2_json(s.goal);
    j["gains"] = {{"kp", s.kp}, {"kd", s.kd}};
    j["limits"] = {{"u_max", s.limits.u_max}};
    j["sim"] = {{"dt", s.dt},
                {"duration", s.duration},
                {"theta_update_every", s.theta_update_every}};
    ordered_json filter;
    filter["mode"] = mode_name(s.filter.mode);
    filter["alpha_gain"] = s.filter.alpha_gain;
    filter["q"] =
        ordered_json::array({ordered_json::array({s.filter.q.m00, s.filter.q.m01}),
                             ordered_json::array({s.filter.q.m10, s.filter.q.m11})});
    filter["theta_grid"] = s.filter.theta_grid;
    filter["refine_tol"] = s.filter.refine_tol;
    filter["max_sweeps"] = s.filter.max_sweeps;
    filter["cbf_margin"] = s.filter.cbf_margin;
    filter["theta_select_margin"] = s.filter.theta_select_margin;
    if (!s.filter.fixed_thetas.empty()) filter["thetas"] = s.filter.fixed_thetas;
    j["filter"] = std::move(filter);
    j["obstacles"] = ordered_json::array();
    for (const ScenarioObstacle& o : s.obstacles) {
        ordered_json obs;
        obs["shape"] = serialize_shape(o.shape);
        obs["pose"] = vec2_json(o.position);
        obs["velocity"] = vec2_json(o.velocity);
        ordered_json sup;
        sup["model"] = o.support.fourier ? "fourier" : "exact";
        sup["n_terms"] = o.support.n_terms;
        sup["grid"] = o.support.grid_points;
        obs["support"] = std::move(sup);
        j["obstacles"].push_back(std::move(obs));
    }
    return j;
}

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioError(e.what());
    }
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    try {
        return parse_scenario(read_json_file(path));
    } catch (const ScenarioError& e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

ObstacleShape load_shape(const std::string& path) {
    try {
        return parse_shape(read_json_file(path), "shape");
    } catch (const ScenarioError& e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

}  // namespace hcbf::cli
