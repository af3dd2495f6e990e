#pragma once

#include <cmath>
#include <cstdint>

namespace oto {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
    double squared_norm() const { return x * x + y * y; }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double squared_norm() const { return x * x + y * y + z * z; }

    Vec2 xy() const { return {x, y}; }
};

inline double squared_distance(const Vec2& a, const Vec2& b) { return (a - b).squared_norm(); }
inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }
inline double squared_distance(const Vec3& a, const Vec3& b) { return (a - b).squared_norm(); }
inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// Angle between two 2D vectors in [0, pi]. Returns 0 if either is (near) zero.
inline double angle_between(const Vec2& a, const Vec2& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na < 1e-6 || nb < 1e-6) return 0.0;
    double c = a.dot(b) / (na * nb);
    c = std::fmax(-1.0, std::fmin(1.0, c));
    return std::acos(c);
}

/// Axis-aligned rectangle in world coordinates.
struct Box2 {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    bool contains(const Vec2& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    Vec2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
};

inline double box_intersection_area(const Box2& a, const Box2& b) {
    const double w = std::fmin(a.x_max, b.x_max) - std::fmax(a.x_min, b.x_min);
    const double h = std::fmin(a.y_max, b.y_max) - std::fmax(a.y_min, b.y_min);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

inline double box_iou(const Box2& a, const Box2& b) {
    const double inter = box_intersection_area(a, b);
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

inline Box2 box_union(const Box2& a, const Box2& b) {
    return {std::fmin(a.x_min, b.x_min), std::fmax(a.x_max, b.x_max),
            std::fmin(a.y_min, b.y_min), std::fmax(a.y_max, b.y_max)};
}

} // namespace oto
