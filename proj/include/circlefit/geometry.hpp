#pragma once

#include <cmath>

#include "circlefit/errors.hpp"

namespace circlefit {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

struct Circle {
    double x = 0.0;  // center
    double y = 0.0;
    double r = 0.0;
};

inline double dist(Point2D a, Point2D b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Distance from p to the circle boundary, negative inside.
inline double signed_residual(const Circle& c, Point2D p) {
    return std::hypot(p.x - c.x, p.y - c.y) - c.r;
}

// Circle through three points via the determinant form
//   D = 2 [x1 (y2 - y3) + x2 (y3 - y1) + x3 (y1 - y2)].
// Returns false when |D| < 1e-9 * s^2 with s the largest pairwise distance
// (scale-relative collinearity guard, unit-independent).
bool try_circle_from_three_points(Point2D p1, Point2D p2, Point2D p3, Circle& out);

// Throwing wrapper: DegenerateTriplet instead of false.
Circle circle_from_three_points(Point2D p1, Point2D p2, Point2D p3);

// Exact lens area of two overlapping disks. Containment and disjoint branches
// are resolved before any acos so tangency cannot leave the domain.
double disk_intersection_area(const Circle& a, const Circle& b);

}  // namespace circlefit
