#pragma once

#include <cmath>

namespace hcbf {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::sqrt(norm_sq(v)); }

/// Rotates v counter-clockwise by angle (radians).
inline Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Symmetric 2x2 matrix, used for quadratic-form weights.
struct Mat2 {
    double m00 = 1.0;
    double m01 = 0.0;
    double m10 = 0.0;
    double m11 = 1.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.m00 * v.x + m.m01 * v.y, m.m10 * v.x + m.m11 * v.y};
}

inline double det(const Mat2& m) { return m.m00 * m.m11 - m.m01 * m.m10; }

/// v^T M v
inline double quad_form(const Mat2& m, Vec2 v) { return dot(v, m * v); }

/// Solves M u = b for a 2x2 matrix with nonzero determinant.
inline Vec2 solve2(const Mat2& m, Vec2 b) {
    const double d = det(m);
    return {(b.x * m.m11 - b.y * m.m01) / d, (m.m00 * b.y - m.m10 * b.x) / d};
}

inline bool is_symmetric_positive_definite(const Mat2& m, double tol = 1e-12) {
    return std::abs(m.m01 - m.m10) <= tol * (1.0 + std::abs(m.m01)) && m.m00 > 0.0 &&
           det(m) > 0.0;
}

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into [-pi, pi]. Exact for inputs already in range.
inline double wrap_angle(double theta) { return std::remainder(theta, kTwoPi); }

}  // namespace hcbf
