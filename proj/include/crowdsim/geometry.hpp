#pragma once

#include "crowdsim/types.hpp"

#include <algorithm>
#include <cmath>

namespace crowdsim {

/// Left-hand perpendicular: rotates v by +90 degrees.
inline Vec2 perpendicular(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline bool rect_contains(const Rect& r, const Vec2& p) {
    return p.x() >= r.x && p.x() <= r.x + r.w && p.y() >= r.y && p.y() <= r.y + r.h;
}

/// Strict interior test (boundary does not count).
inline bool rect_contains_interior(const Rect& r, const Vec2& p) {
    return p.x() > r.x && p.x() < r.x + r.w && p.y() > r.y && p.y() < r.y + r.h;
}

/// Closest point of the closed rectangle to p (p itself when inside).
inline Vec2 rect_closest_point(const Rect& r, const Vec2& p) {
    return Vec2(std::clamp(p.x(), r.x, r.x + r.w), std::clamp(p.y(), r.y, r.y + r.h));
}

inline double rect_distance(const Rect& r, const Vec2& p) {
    return (p - rect_closest_point(r, p)).norm();
}

/// Whether the open interiors of two rectangles intersect.
inline bool rects_overlap_interior(const Rect& a, const Rect& b) {
    return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

inline Vec2 segment_closest_point(const Vec2& a, const Vec2& b, const Vec2& p) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 <= 0.0) return a;
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return a + t * ab;
}

inline double segment_distance(const Vec2& a, const Vec2& b, const Vec2& p) {
    return (p - segment_closest_point(a, b, p)).norm();
}

/// Whether segment a-b passes through the open interior of rect r.
/// Sampled at a fine fixed step plus both endpoints; used for validation only.
inline bool segment_intersects_rect_interior(const Vec2& a, const Vec2& b, const Rect& r) {
    if (rect_contains_interior(r, a) || rect_contains_interior(r, b)) return true;
    const double len = (b - a).norm();
    if (len <= 0.0) return false;
    const int steps = std::max(2, static_cast<int>(std::ceil(len / 0.01)));
    for (int i = 1; i < steps; ++i) {
        const Vec2 p = a + (static_cast<double>(i) / steps) * (b - a);
        if (rect_contains_interior(r, p)) return true;
    }
    return false;
}

} // namespace crowdsim
