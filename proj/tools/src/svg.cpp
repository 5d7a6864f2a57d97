#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hcbf/shape.hpp"

namespace hcbf::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 48.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Bounds {
    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    void pad(double fraction) {
        const double dx = std::max(1e-6, (max_x - min_x) * fraction);
        const double dy = std::max(1e-6, (max_y - min_y) * fraction);
        min_x -= dx, max_x += dx;
        min_y -= dy, max_y += dy;
    }
};

// World-to-screen transform preserving aspect ratio, y up.
struct Projection {
    Bounds b;
    double scale;
    double ox, oy;

    explicit Projection(Bounds bounds) : b(bounds) {
        const double sx = (kWidth - 2 * kMargin) / (b.max_x - b.min_x);
        const double sy = (kHeight - 2 * kMargin) / (b.max_y - b.min_y);
        scale = std::min(sx, sy);
        ox = kMargin + 0.5 * ((kWidth - 2 * kMargin) - scale * (b.max_x - b.min_x));
        oy = kMargin + 0.5 * ((kHeight - 2 * kMargin) - scale * (b.max_y - b.min_y));
    }
    double x(double wx) const { return ox + scale * (wx - b.min_x); }
    double y(double wy) const { return kHeight - (oy + scale * (wy - b.min_y)); }
};

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(kWidth) +
           " " + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n"
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts,
                     const std::string& color, double width, bool dashed) {
    std::string out = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                      fmt(width) + "\"";
    if (dashed) out += " stroke-dasharray=\"6 4\"";
    out += " points=\"";
    for (const auto& [x, y] : pts) out += fmt(x) + "," + fmt(y) + " ";
    out += "\"/>\n";
    return out;
}

void draw_obstacle(std::string& out, const Projection& proj, const ObstacleShape& shape,
                   Vec2 position, double opacity) {
    const std::string style = "fill=\"#c23b3b\" fill-opacity=\"" + fmt(0.35 * opacity) +
                              "\" stroke=\"#8b1f1f\" stroke-opacity=\"" + fmt(opacity) +
                              "\" stroke-width=\"1.2\"";
    if (const auto* d = std::get_if<Disc>(&shape.variant())) {
        out += "<circle cx=\"" + fmt(proj.x(position.x)) + "\" cy=\"" +
               fmt(proj.y(position.y)) + "\" r=\"" + fmt(d->radius * proj.scale) + "\" " +
               style + "/>\n";
        return;
    }
    if (const auto* e = std::get_if<Ellipse>(&shape.variant())) {
        out += "<ellipse cx=\"" + fmt(proj.x(position.x)) + "\" cy=\"" +
               fmt(proj.y(position.y)) + "\" rx=\"" + fmt(e->semi_major * proj.scale) +
               "\" ry=\"" + fmt(e->semi_minor * proj.scale) + "\" transform=\"rotate(" +
               fmt(-e->rotation * 180.0 / kPi) + " " + fmt(proj.x(position.x)) + " " +
               fmt(proj.y(position.y)) + ")\" " + style + "/>\n";
        return;
    }
    out += "<path d=\"";
    bool first = true;
    for (Vec2 w : boundary_polyline(shape, position, 64)) {
        out += (first ? "M" : "L") + fmt(proj.x(w.x)) + " " + fmt(proj.y(w.y)) + " ";
        first = false;
    }
    out += "Z\" " + style + "/>\n";
}

}  // namespace

std::string plan_view_svg(const Scenario& scenario,
                          const std::vector<const TrajectoryLog*>& logs,
                          const std::vector<std::string>& labels) {
    Bounds bounds;
    bounds.add(scenario.goal.x, scenario.goal.y);
    for (const TrajectoryLog* log : logs) {
        for (const LogRow& row : log->rows) bounds.add(row.p.x, row.p.y);
    }
    for (const ScenarioObstacle& obs : scenario.obstacles) {
        const double extent = obs.shape.max_extent();
        for (double t : {0.0, scenario.duration}) {
            const Vec2 at = obs.position + t * obs.velocity;
            bounds.add(at.x - extent, at.y - extent);
            bounds.add(at.x + extent, at.y + extent);
        }
    }
    bounds.pad(0.08);
    const Projection proj(bounds);

    std::string out = svg_open();
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
    constexpr int kSnapshots = 7;

    // Static obstacles once; moving obstacles as fading snapshots.
    for (const ScenarioObstacle& obs : scenario.obstacles) {
        if (norm(obs.velocity) == 0.0) {
            draw_obstacle(out, proj, obs.shape, obs.position, 1.0);
        } else {
            for (int s = 0; s < kSnapshots; ++s) {
                const double t = scenario.duration * s / (kSnapshots - 1);
                const double opacity = 0.25 + 0.75 * s / (kSnapshots - 1);
                draw_obstacle(out, proj, obs.shape, obs.position + t * obs.velocity,
                              opacity);
            }
        }
    }

    for (std::size_t i = 0; i < logs.size(); ++i) {
        const std::string color = colors[i % 3];
        std::vector<std::pair<double, double>> pts;
        for (const LogRow& row : logs[i]->rows) {
            pts.emplace_back(proj.x(row.p.x), proj.y(row.p.y));
        }
        out += polyline(pts, color, 1.5, i % 2 == 1);
        // Agent snapshots, older ones fainter.
        const std::size_t rows = logs[i]->rows.size();
        for (int s = 0; s < kSnapshots; ++s) {
            const std::size_t idx = (rows - 1) * s / (kSnapshots - 1);
            const LogRow& row = logs[i]->rows[idx];
            const double opacity = 0.2 + 0.8 * s / (kSnapshots - 1);
            out += "<circle cx=\"" + fmt(proj.x(row.p.x)) + "\" cy=\"" +
                   fmt(proj.y(row.p.y)) + "\" r=\"" +
                   fmt(std::max(2.0, scenario.agent_radius * proj.scale)) +
                   "\" fill=\"" + color + "\" fill-opacity=\"" + fmt(0.45 * opacity) +
                   "\" stroke=\"" + color + "\" stroke-opacity=\"" + fmt(opacity) +
                   "\"/>\n";
        }
        if (i < labels.size()) {
            out += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(20.0 + 16.0 * i) +
                   "\" fill=\"" + color + "\">" + labels[i] + "</text>\n";
        }
    }

    // Goal marker.
    out += "<circle cx=\"" + fmt(proj.x(scenario.goal.x)) + "\" cy=\"" +
           fmt(proj.y(scenario.goal.y)) +
           "\" r=\"5\" fill=\"none\" stroke=\"#222\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + fmt(proj.x(scenario.goal.x) + 8) + "\" y=\"" +
           fmt(proj.y(scenario.goal.y) + 4) + "\" fill=\"#222\">goal</text>\n";
    out += "</svg>\n";
    return out;
}

std::string timeseries_svg(const std::string& title, const std::string& y_label,
                           const std::vector<Series>& series) {
    Bounds bounds;
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.t.size(); ++i) bounds.add(s.t[i], s.value[i]);
    }
    if (!std::isfinite(bounds.min_x)) bounds = {0, 1, 0, 1};
    if (bounds.max_y == bounds.min_y) bounds.max_y = bounds.min_y + 1.0;
    bounds.pad(0.05);

    const auto px = [&](double t) {
        return kMargin + (kWidth - 2 * kMargin) * (t - bounds.min_x) /
                             (bounds.max_x - bounds.min_x);
    };
    const auto py = [&](double v) {
        return kHeight - kMargin -
               (kHeight - 2 * kMargin) * (v - bounds.min_y) / (bounds.max_y - bounds.min_y);
    };

    std::string out = svg_open();
    out += "<text x=\"" + fmt(kWidth / 2 - 60) + "\" y=\"20\" font-size=\"14\">" + title +
           "</text>\n";
    // Axes.
    out += polyline({{kMargin, kMargin}, {kMargin, kHeight - kMargin},
                     {kWidth - kMargin, kHeight - kMargin}},
                    "#444", 1.0, false);
    for (int i = 0; i <= 5; ++i) {
        const double t = bounds.min_x + (bounds.max_x - bounds.min_x) * i / 5.0;
        const double v = bounds.min_y + (bounds.max_y - bounds.min_y) * i / 5.0;
        out += "<text x=\"" + fmt(px(t) - 10) + "\" y=\"" + fmt(kHeight - kMargin + 16) +
               "\" fill=\"#444\">" + fmt(t) + "</text>\n";
        out += "<text x=\"4\" y=\"" + fmt(py(v) + 4) + "\" fill=\"#444\">" + fmt(v) +
               "</text>\n";
        out += polyline({{kMargin - 3, py(v)}, {kMargin, py(v)}}, "#444", 1.0, false);
        out += polyline({{px(t), kHeight - kMargin}, {px(t), kHeight - kMargin + 3}},
                        "#444", 1.0, false);
    }
    if (bounds.min_y < 0.0 && bounds.max_y > 0.0) {
        out += polyline({{kMargin, py(0.0)}, {kWidth - kMargin, py(0.0)}}, "#bbb", 0.8,
                        true);
    }
    out += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin - 8) +
           "\" fill=\"#444\">" + y_label + "</text>\n";
    out += "<text x=\"" + fmt(kWidth - kMargin - 40) + "\" y=\"" +
           fmt(kHeight - kMargin + 32) + "\" fill=\"#444\">t [s]</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const Series& s = series[i];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < s.t.size(); ++k) {
            pts.emplace_back(px(s.t[k]), py(s.value[k]));
        }
        out += polyline(pts, s.color, 1.5, s.dashed);
        out += "<text x=\"" + fmt(kWidth - kMargin - 150) + "\" y=\"" +
               fmt(20.0 + 16.0 * i) + "\" fill=\"" + s.color + "\">" + s.label +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string support_polar_svg(const std::vector<double>& theta,
                              const std::vector<double>& exact,
                              const std::vector<double>& fitted) {
    Bounds bounds;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        bounds.add(exact[i] * std::cos(theta[i]), exact[i] * std::sin(theta[i]));
        bounds.add(fitted[i] * std::cos(theta[i]), fitted[i] * std::sin(theta[i]));
    }
    bounds.pad(0.1);
    const Projection proj(bounds);
    std::string out = svg_open();
    const auto curve = [&](const std::vector<double>& r, const std::string& color,
                           bool dashed) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i <= theta.size(); ++i) {
            const std::size_t k = i % theta.size();
            pts.emplace_back(proj.x(r[k] * std::cos(theta[k])),
                             proj.y(r[k] * std::sin(theta[k])));
        }
        out += polyline(pts, color, 1.5, dashed);
    };
    curve(exact, "#d62728", false);
    curve(fitted, "#1f77b4", true);
    out += "<text x=\"" + fmt(kMargin) + "\" y=\"20\" fill=\"#d62728\">exact</text>\n";
    out += "<text x=\"" + fmt(kMargin) +
           "\" y=\"36\" fill=\"#1f77b4\">fourier + margin</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace hcbf::cli
