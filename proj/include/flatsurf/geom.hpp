#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace flatsurf {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    double angle() const { return std::atan2(y, x); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// CCW angle in [0, 2pi) needed to rotate direction `from` onto `to`.
inline double ccw_angle(const Vec2& from, const Vec2& to) {
    double a = std::atan2(from.cross(to), from.dot(to));
    if (a < 0) a += 2.0 * kPi;
    return a;
}

/// Signed area of a polygon given by its vertex loop (positive for CCW).
inline double signed_area(const std::vector<Vec2>& vs) {
    double s = 0.0;
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vs[i];
        const Vec2& b = vs[(i + 1) % n];
        s += a.cross(b);
    }
    return 0.5 * s;
}

/// Distance from point p to segment [a,b].
inline double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double t = ab.norm2() > 0 ? (p - a).dot(ab) / ab.norm2() : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + ab * t);
}

/// Proper or touching intersection test for open segments (a,b) and (c,d).
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Point-in-polygon test (winding rule); boundary points count as inside.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double tol);

}  // namespace flatsurf
