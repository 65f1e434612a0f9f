#pragma once

#include <cmath>
#include <cstdint>

namespace diskconn {

// Identifies a site for its whole lifetime. Assigned in insertion order,
// starting at 0, never reused.
using SiteId = std::uint32_t;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// A plane point with an associated positive radius; induces the closed disk
// of that radius around the center.
struct Site {
    SiteId id = 0;
    Point center;
    double radius = 0.0;
};

inline bool point_is_finite(Point p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

inline bool site_is_valid(const Site& s) {
    return point_is_finite(s.center) && std::isfinite(s.radius) && s.radius > 0.0;
}

inline double euclidean_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Closed-disk intersection test: ||st|| <= r_s + r_t, evaluated in squared
// form so no square root is taken. Tangency counts as intersecting.
inline bool disks_intersect(const Site& s, const Site& t) {
    const double dx = s.center.x - t.center.x;
    const double dy = s.center.y - t.center.y;
    const double rr = s.radius + t.radius;
    return dx * dx + dy * dy <= rr * rr;
}

// Additively weighted distance from a query point to a site's disk boundary:
// ||qs|| - r_s. Negative when q lies inside the disk.
inline double weighted_distance(Point q, const Site& s) {
    return euclidean_distance(q, s.center) - s.radius;
}

}  // namespace diskconn
