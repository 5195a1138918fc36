#pragma once

#include <cmath>

namespace veremi {

// Planar simulator coordinates in meters (positions) or m/s (speeds).
// z is carried through everywhere so three-component dataset records are
// handled uniformly; generated traces keep z = 0.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double euclidean_distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

// Axis-aligned rectangle, used for the playground bounds.
struct Rect {
    double minX = 0.0;
    double minY = 0.0;
    double maxX = 0.0;
    double maxY = 0.0;

    friend constexpr bool operator==(const Rect&, const Rect&) = default;

    constexpr double width() const { return maxX - minX; }
    constexpr double height() const { return maxY - minY; }
    constexpr bool degenerate() const { return !(maxX > minX) || !(maxY > minY); }
    constexpr bool contains(const Vec3& p) const {
        return p.x >= minX && p.x <= maxX && p.y >= minY && p.y <= maxY;
    }
};

} // namespace veremi
