#include "hcbf/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcbf {

namespace {

constexpr double kCollinearEps = 1e-12;

Vec2 centroid(const std::vector<Vec2>& points) {
    Vec2 c;
    for (Vec2 p : points) c += p;
    return c / static_cast<double>(points.size());
}

Vec2 closest_point_on_segment(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 ab = b - a;
    const double len_sq = norm_sq(ab);
    if (len_sq == 0.0) return a;
    const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
    return a + t * ab;
}

// Body -> world for a shape whose reference point sits at world_reference.
Vec2 to_world(const ObstacleShape& shape, Vec2 world_reference, Vec2 body_point) {
    return world_reference + (body_point - shape.reference_point());
}

Vec2 to_body(const ObstacleShape& shape, Vec2 world_reference, Vec2 world_point) {
    return shape.reference_point() + (world_point - world_reference);
}

// Squared distance from body-frame point p to the ellipse boundary parameter gamma.
double ellipse_dist_sq(const Ellipse& e, Vec2 p_local, double gamma) {
    const Vec2 q{e.semi_major * std::cos(gamma), e.semi_minor * std::sin(gamma)};
    return norm_sq(p_local - q);
}

}  // namespace

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("convex_hull: need at least 3 points");
    }
    std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
                 points.end());

    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("convex_hull: degenerate point set");

    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <=
                             kCollinearEps) {
            --k;
        }
        hull[k++] = points[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper chain
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <=
                                 kCollinearEps) {
            --k;
        }
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw std::invalid_argument("convex_hull: collinear point set");
    return hull;
}

ObstacleShape::ObstacleShape(std::variant<Disc, Ellipse, Polygon, GeneralRadial> shape,
                             Vec2 reference, std::vector<Vec2> hull)
    : shape_(std::move(shape)), reference_(reference), hull_(std::move(hull)) {}

ObstacleShape ObstacleShape::disc(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("disc: radius must be > 0");
    }
    return ObstacleShape(Disc{radius}, Vec2{}, {});
}

ObstacleShape ObstacleShape::ellipse(double semi_major, double semi_minor,
                                     double rotation) {
    if (!(semi_minor > 0.0) || !(semi_major >= semi_minor) ||
        !std::isfinite(semi_major) || !std::isfinite(rotation)) {
        throw std::invalid_argument("ellipse: require a >= b > 0 and finite rotation");
    }
    return ObstacleShape(Ellipse{semi_major, semi_minor, rotation}, Vec2{}, {});
}

ObstacleShape ObstacleShape::polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) {
        throw std::invalid_argument("polygon: need at least 3 vertices");
    }
    for (Vec2 v : vertices) {
        if (!is_finite(v)) throw std::invalid_argument("polygon: non-finite vertex");
    }
    std::vector<Vec2> hull = convex_hull(vertices);  // throws when collinear
    const Vec2 p_o = centroid(hull);
    return ObstacleShape(Polygon{std::move(vertices)}, p_o, std::move(hull));
}

ObstacleShape ObstacleShape::general_radial(std::vector<RadialSample> samples) {
    if (samples.size() < 8) {
        throw std::invalid_argument("general_radial: need at least 8 samples");
    }
    double prev = -1.0;
    std::vector<Vec2> boundary;
    boundary.reserve(samples.size());
    for (const RadialSample& s : samples) {
        if (!(s.angle >= 0.0) || !(s.angle < kTwoPi) || s.angle <= prev) {
            throw std::invalid_argument(
                "general_radial: angles must be strictly increasing in [0, 2pi)");
        }
        if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
            throw std::invalid_argument("general_radial: radii must be > 0");
        }
        prev = s.angle;
        boundary.push_back({s.radius * std::cos(s.angle), s.radius * std::sin(s.angle)});
    }
    std::vector<Vec2> hull = convex_hull(boundary);
    const Vec2 p_o = centroid(hull);
    return ObstacleShape(GeneralRadial{std::move(samples)}, p_o, std::move(hull));
}

double ObstacleShape::max_extent() const {
    if (const auto* d = std::get_if<Disc>(&shape_)) return d->radius;
    if (const auto* e = std::get_if<Ellipse>(&shape_)) return e->semi_major;
    double best = 0.0;
    for (Vec2 v : hull_) best = std::max(best, norm(v - reference_));
    return best;
}

double support_distance(const ObstacleShape& shape, double theta) {
    const double t = wrap_angle(theta);
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return s.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const double rel = wrap_angle(t - s.rotation);
                const double cx = s.semi_major * std::cos(rel);
                const double sy = s.semi_minor * std::sin(rel);
                const double gamma_max = std::atan2(sy, cx);
                return cx * std::cos(gamma_max) + sy * std::sin(gamma_max);
            } else {
                const Vec2 n{std::cos(t), std::sin(t)};
                double best = -std::numeric_limits<double>::infinity();
                for (Vec2 q : shape.hull()) {
                    best = std::max(best, dot(n, q - shape.reference_point()));
                }
                return best;
            }
        },
        shape.variant());
}

bool hull_contains(const ObstacleShape& shape, Vec2 world_reference, Vec2 p) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return norm_sq(p - world_reference) <= s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Vec2 d = rotate(p - world_reference, -s.rotation);
                const double nx = d.x / s.semi_major;
                const double ny = d.y / s.semi_minor;
                return nx * nx + ny * ny <= 1.0;
            } else {
                const Vec2 q = to_body(shape, world_reference, p);
                const auto& hull = shape.hull();
                for (std::size_t i = 0; i < hull.size(); ++i) {
                    const Vec2 a = hull[i];
                    const Vec2 b = hull[(i + 1) % hull.size()];
                    if (cross(b - a, q - a) < 0.0) return false;
                }
                return true;
            }
        },
        shape.variant());
}

Vec2 closest_point(const ObstacleShape& shape, Vec2 world_reference, Vec2 p) {
    if (hull_contains(shape, world_reference, p)) {
        throw InsideHullError("closest_point: point is not strictly outside the hull");
    }
    return std::visit(
        [&](const auto& s) -> Vec2 {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disc>) {
                const Vec2 d = p - world_reference;
                return world_reference + (s.radius / norm(d)) * d;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Vec2 local = rotate(p - world_reference, -s.rotation);
                // Coarse scan, then golden-section refinement in every local
                // basin; external points can see two distance minima.
                constexpr int kScan = 1024;
                double f[kScan];
                for (int i = 0; i < kScan; ++i) {
                    f[i] = ellipse_dist_sq(s, local, kTwoPi * i / kScan);
                }
                constexpr double kInvPhi = 0.6180339887498949;
                double best_val = std::numeric_limits<double>::infinity();
                double best_gamma = 0.0;
                for (int i = 0; i < kScan; ++i) {
                    const int prev = (i + kScan - 1) % kScan;
                    const int next = (i + 1) % kScan;
                    if (f[i] > f[prev] || f[i] > f[next]) continue;
                    double lo = kTwoPi * (i - 1) / kScan;
                    double hi = kTwoPi * (i + 1) / kScan;
                    double x1 = hi - kInvPhi * (hi - lo);
                    double x2 = lo + kInvPhi * (hi - lo);
                    double f1 = ellipse_dist_sq(s, local, x1);
                    double f2 = ellipse_dist_sq(s, local, x2);
                    while (hi - lo > 1e-10) {
                        if (f1 < f2) {
                            hi = x2, x2 = x1, f2 = f1;
                            x1 = hi - kInvPhi * (hi - lo);
                            f1 = ellipse_dist_sq(s, local, x1);
                        } else {
                            lo = x1, x1 = x2, f1 = f2;
                            x2 = lo + kInvPhi * (hi - lo);
                            f2 = ellipse_dist_sq(s, local, x2);
                        }
                    }
                    const double gamma = 0.5 * (lo + hi);
                    const double val = ellipse_dist_sq(s, local, gamma);
                    if (val < best_val) best_val = val, best_gamma = gamma;
                }
                const Vec2 q_local{s.semi_major * std::cos(best_gamma),
                                   s.semi_minor * std::sin(best_gamma)};
                return world_reference + rotate(q_local, s.rotation);
            } else {
                const auto& hull = shape.hull();
                const Vec2 q = to_body(shape, world_reference, p);
                double best = std::numeric_limits<double>::infinity();
                Vec2 best_point;
                for (std::size_t i = 0; i < hull.size(); ++i) {
                    const Vec2 cand = closest_point_on_segment(
                        hull[i], hull[(i + 1) % hull.size()], q);
                    const double d = norm_sq(q - cand);
                    if (d < best) best = d, best_point = cand;
                }
                return to_world(shape, world_reference, best_point);
            }
        },
        shape.variant());
}

double distance_to_hull(const ObstacleShape& shape, Vec2 world_reference, Vec2 p) {
    if (hull_contains(shape, world_reference, p)) return 0.0;
    return norm(p - closest_point(shape, world_reference, p));
}

std::vector<Vec2> boundary_polyline(const ObstacleShape& shape, Vec2 world_reference,
                                    int samples) {
    std::vector<Vec2> out;
    if (shape.is_polygonal()) {
        out.reserve(shape.hull().size());
        for (Vec2 v : shape.hull()) out.push_back(to_world(shape, world_reference, v));
        return out;
    }
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double phi = kTwoPi * i / samples;
        if (const auto* d = std::get_if<Disc>(&shape.variant())) {
            out.push_back(world_reference +
                          Vec2{d->radius * std::cos(phi), d->radius * std::sin(phi)});
        } else {
            const auto& e = std::get<Ellipse>(shape.variant());
            const Vec2 q{e.semi_major * std::cos(phi), e.semi_minor * std::sin(phi)};
            out.push_back(world_reference + rotate(q, e.rotation));
        }
    }
    return out;
}

}  // namespace hcbf
