#include "circlefit/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace circlefit {

bool try_circle_from_three_points(Point2D p1, Point2D p2, Point2D p3, Circle& out) {
    const double d12 = dist(p1, p2);
    const double d13 = dist(p1, p3);
    const double d23 = dist(p2, p3);
    const double s = std::max({d12, d13, d23});

    const double d = 2.0 * (p1.x * (p2.y - p3.y) + p2.x * (p3.y - p1.y) + p3.x * (p1.y - p2.y));
    if (std::abs(d) < 1e-9 * s * s) return false;

    const double s1 = p1.x * p1.x + p1.y * p1.y;
    const double s2 = p2.x * p2.x + p2.y * p2.y;
    const double s3 = p3.x * p3.x + p3.y * p3.y;

    out.x = (s1 * (p2.y - p3.y) + s2 * (p3.y - p1.y) + s3 * (p1.y - p2.y)) / d;
    out.y = (s1 * (p3.x - p2.x) + s2 * (p1.x - p3.x) + s3 * (p2.x - p1.x)) / d;
    out.r = std::hypot(p1.x - out.x, p1.y - out.y);
    return std::isfinite(out.x) && std::isfinite(out.y) && std::isfinite(out.r) && out.r > 0.0;
}

Circle circle_from_three_points(Point2D p1, Point2D p2, Point2D p3) {
    Circle c;
    if (!try_circle_from_three_points(p1, p2, p3, c)) throw DegenerateTriplet();
    return c;
}

double disk_intersection_area(const Circle& a, const Circle& b) {
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    const double rmin = std::min(a.r, b.r);
    if (d + rmin <= std::max(a.r, b.r)) {
        return std::numbers::pi * rmin * rmin;  // one disk inside the other
    }
    if (d >= a.r + b.r) {
        return 0.0;  // disjoint or externally tangent
    }
    const double r1 = a.r, r2 = b.r;
    const double alpha = std::acos((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1));
    const double beta = std::acos((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2));
    const double tri = 0.5 * std::sqrt(std::max(0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
    return r1 * r1 * alpha + r2 * r2 * beta - tri;
}

}  // namespace circlefit
