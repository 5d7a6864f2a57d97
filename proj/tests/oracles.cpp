#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcbf::testing {

std::vector<Vec2> hull_by_pairwise_halfplanes(const std::vector<Vec2>& points) {
    std::vector<std::pair<Vec2, Vec2>> edges;
    const double eps = 1e-12;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            const Vec2 a = points[i], b = points[j];
            if (a.x == b.x && a.y == b.y) continue;
            bool edge = true;
            bool strict = false;  // reject zero-length degenerate edge chains
            for (std::size_t k = 0; k < points.size() && edge; ++k) {
                if (k == i || k == j) continue;
                const double c = cross(b - a, points[k] - a);
                if (c < -eps) edge = false;
                if (c > eps) strict = true;
            }
            if (edge && strict) edges.emplace_back(a, b);
        }
    }
    if (edges.empty()) throw std::invalid_argument("halfplane oracle: degenerate input");

    // Chain the edges into a CCW cycle starting from the lexicographic min.
    std::vector<Vec2> hull;
    Vec2 start = edges.front().first;
    for (const auto& [a, b] : edges) {
        if (a.x < start.x || (a.x == start.x && a.y < start.y)) start = a;
        if (b.x < start.x || (b.x == start.x && b.y < start.y)) start = b;
    }
    Vec2 current = start;
    for (std::size_t guard = 0; guard <= edges.size(); ++guard) {
        hull.push_back(current);
        const std::pair<Vec2, Vec2>* next = nullptr;
        for (const auto& e : edges) {
            if (e.first == current && !(e.second == current)) {
                // Collinear duplicates: prefer the farthest endpoint.
                if (next == nullptr ||
                    norm_sq(e.second - current) > norm_sq(next->second - current)) {
                    next = &e;
                }
            }
        }
        if (next == nullptr) throw std::logic_error("halfplane oracle: broken chain");
        current = next->second;
        if (current == start) break;
    }
    return hull;
}

std::vector<Vec2> sample_boundary(const ObstacleShape& shape, int samples) {
    std::vector<Vec2> out;
    if (const auto* d = std::get_if<Disc>(&shape.variant())) {
        for (int i = 0; i < samples; ++i) {
            const double phi = kTwoPi * i / samples;
            out.push_back({d->radius * std::cos(phi), d->radius * std::sin(phi)});
        }
    } else if (const auto* e = std::get_if<Ellipse>(&shape.variant())) {
        for (int i = 0; i < samples; ++i) {
            const double gamma = kTwoPi * i / samples;
            const Vec2 q{e->semi_major * std::cos(gamma), e->semi_minor * std::sin(gamma)};
            out.push_back(rotate(q, e->rotation));
        }
    } else if (const auto* poly = std::get_if<Polygon>(&shape.variant())) {
        const auto& verts = poly->vertices;
        const int per_edge = std::max(1, samples / static_cast<int>(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const Vec2 a = verts[i], b = verts[(i + 1) % verts.size()];
            for (int s = 0; s < per_edge; ++s) {
                out.push_back(a + (static_cast<double>(s) / per_edge) * (b - a));
            }
        }
    } else {
        for (const RadialSample& s : std::get<GeneralRadial>(shape.variant()).samples) {
            out.push_back({s.radius * std::cos(s.angle), s.radius * std::sin(s.angle)});
        }
    }
    return out;
}

double support_by_grid(const ObstacleShape& shape, double theta, int samples) {
    const Vec2 n{std::cos(theta), std::sin(theta)};
    const Vec2 p_o = shape.reference_point();
    double best = -std::numeric_limits<double>::infinity();
    for (Vec2 q : sample_boundary(shape, samples)) {
        best = std::max(best, dot(n, q - p_o));
    }
    return best;
}

EllipseSupportGrid::EllipseSupportGrid(int samples)
    : cos_(static_cast<std::size_t>(samples)), sin_(static_cast<std::size_t>(samples)) {
    for (int i = 0; i < samples; ++i) {
        const double gamma = kTwoPi * i / samples;
        cos_[static_cast<std::size_t>(i)] = std::cos(gamma);
        sin_[static_cast<std::size_t>(i)] = std::sin(gamma);
    }
}

double EllipseSupportGrid::eval(double a, double b, double beta, double theta) const {
    // n(theta) . R(beta) r(gamma) = (a cos(theta - beta)) cos g + (b sin(theta - beta)) sin g
    const double rel = theta - beta;
    const double ca = a * std::cos(rel);
    const double sb = b * std::sin(rel);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cos_.size(); ++i) {
        best = std::max(best, ca * cos_[i] + sb * sin_[i]);
    }
    return best;
}

namespace {

bool grid_point_feasible(Vec2 u, double u_max, std::span<const AffineConstraint> cons) {
    if (norm_sq(u) > u_max * u_max * (1.0 + 1e-12)) return false;
    for (const AffineConstraint& c : cons) {
        if (dot(c.c_u, u) + c.c_0 < -1e-12) return false;
    }
    return true;
}

}  // namespace

GridQpResult qp_grid_naive(const Mat2& q, Vec2 u_des, double u_max,
                           std::span<const AffineConstraint> cons, int grid) {
    GridQpResult best;
    best.objective = std::numeric_limits<double>::infinity();
    const double spacing = 2.0 * u_max / (grid - 1);
    for (int iy = 0; iy < grid; ++iy) {
        for (int ix = 0; ix < grid; ++ix) {
            const Vec2 u{-u_max + ix * spacing, -u_max + iy * spacing};
            if (!grid_point_feasible(u, u_max, cons)) continue;
            const double obj = quad_form(q, u - u_des);
            if (!best.feasible || obj < best.objective) best = {true, u, obj};
        }
    }
    return best;
}

GridQpResult qp_grid_rowwise(const Mat2& q, Vec2 u_des, double u_max,
                             std::span<const AffineConstraint> cons, int grid) {
    GridQpResult best;
    best.objective = std::numeric_limits<double>::infinity();
    const double spacing = 2.0 * u_max / (grid - 1);
    for (int iy = 0; iy < grid; ++iy) {
        const double y = -u_max + iy * spacing;
        const double chord_sq = u_max * u_max - y * y;
        if (chord_sq < 0.0) continue;
        const double chord = std::sqrt(chord_sq);
        double xlo = -chord, xhi = chord;
        bool empty = false;
        for (const AffineConstraint& c : cons) {
            const double rest = c.c_u.y * y + c.c_0;
            if (std::abs(c.c_u.x) <= 1e-300) {
                if (rest < 0.0) {
                    empty = true;
                    break;
                }
                continue;
            }
            const double bound = -rest / c.c_u.x;
            if (c.c_u.x > 0.0) {
                xlo = std::max(xlo, bound);
            } else {
                xhi = std::min(xhi, bound);
            }
        }
        if (empty || xlo > xhi) continue;
        const int ilo =
            std::max(0, static_cast<int>(std::ceil((xlo + u_max) / spacing - 1e-9)));
        const int ihi = std::min(
            grid - 1, static_cast<int>(std::floor((xhi + u_max) / spacing + 1e-9)));
        if (ilo > ihi) continue;
        const double dy = y - u_des.y;
        const double x_star = u_des.x - (q.m01 / q.m00) * dy;
        const int pivot =
            std::clamp(static_cast<int>(std::lround((x_star + u_max) / spacing)), ilo, ihi);
        for (int ix = std::max(ilo, pivot - 1); ix <= std::min(ihi, pivot + 1); ++ix) {
            const double x = -u_max + ix * spacing;
            const double dx = x - u_des.x;
            const double obj =
                q.m00 * dx * dx + 2.0 * q.m01 * dx * dy + q.m11 * dy * dy;
            if (!best.feasible || obj < best.objective) best = {true, {x, y}, obj};
        }
    }
    return best;
}

}  // namespace hcbf::testing
