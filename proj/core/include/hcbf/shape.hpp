#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "hcbf/vec2.hpp"

namespace hcbf {

/// Thrown when a query point lies inside (or on) an obstacle's convex hull,
/// where closest-point and orthogonal-normal queries are undefined.
class InsideHullError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct Disc {
    double radius = 1.0;
};

struct Ellipse {
    double semi_major = 1.0;  // a
    double semi_minor = 1.0;  // b, a >= b > 0
    double rotation = 0.0;    // beta, radians
};

struct Polygon {
    std::vector<Vec2> vertices;  // body frame, any winding, may be non-convex
};

struct RadialSample {
    double angle = 0.0;   // phi, strictly increasing within [0, 2pi)
    double radius = 1.0;  // r(phi) > 0, measured from the body origin
};

struct GeneralRadial {
    std::vector<RadialSample> samples;  // >= 8 samples
};

/// Computes the convex hull of a point set (monotone chain).
/// Returns vertices in counter-clockwise order with collinear points removed.
/// Throws std::invalid_argument for fewer than 3 points or an all-collinear set.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// An obstacle outline in its body frame. Non-convex polygons and general
/// radial shapes are convexified on construction; all distance queries act on
/// the convex hull. The reference point p_o is the hull-vertex centroid for
/// polygonal shapes and the centre for discs and ellipses.
class ObstacleShape {
  public:
    static ObstacleShape disc(double radius);
    static ObstacleShape ellipse(double semi_major, double semi_minor, double rotation);
    static ObstacleShape polygon(std::vector<Vec2> vertices);
    static ObstacleShape general_radial(std::vector<RadialSample> samples);

    const std::variant<Disc, Ellipse, Polygon, GeneralRadial>& variant() const {
        return shape_;
    }

    Vec2 reference_point() const { return reference_; }

    /// Convex hull vertices (CCW, body frame). Empty for discs and ellipses,
    /// which keep analytic boundaries.
    const std::vector<Vec2>& hull() const { return hull_; }

    bool is_disc() const { return std::holds_alternative<Disc>(shape_); }
    bool is_ellipse() const { return std::holds_alternative<Ellipse>(shape_); }
    bool is_polygonal() const { return !hull_.empty(); }

    /// Largest distance from the reference point to the hull boundary.
    double max_extent() const;

  private:
    ObstacleShape(std::variant<Disc, Ellipse, Polygon, GeneralRadial> shape, Vec2 reference,
                  std::vector<Vec2> hull);

    std::variant<Disc, Ellipse, Polygon, GeneralRadial> shape_;
    Vec2 reference_;
    std::vector<Vec2> hull_;
};

/// Angle-dependent support distance delta_j(theta): the farthest extent of the
/// shape's convex hull beyond the line through the reference point with unit
/// normal (cos theta, sin theta). 2pi-periodic in theta.
double support_distance(const ObstacleShape& shape, double theta);

/// True when p lies inside or on the convex hull of the shape placed so that
/// its reference point sits at world_reference.
bool hull_contains(const ObstacleShape& shape, Vec2 world_reference, Vec2 p);

/// The unique nearest point of the shape's convex hull to p (world frame).
/// Throws InsideHullError unless p is strictly outside the hull.
Vec2 closest_point(const ObstacleShape& shape, Vec2 world_reference, Vec2 p);

/// Euclidean distance from p to the convex hull; zero when p is inside.
double distance_to_hull(const ObstacleShape& shape, Vec2 world_reference, Vec2 p);

/// Samples the hull boundary (world frame), mainly for plotting.
std::vector<Vec2> boundary_polyline(const ObstacleShape& shape, Vec2 world_reference,
                                    int samples);

}  // namespace hcbf
