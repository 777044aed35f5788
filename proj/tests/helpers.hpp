#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "circlefit/geometry.hpp"
#include "circlefit/image_io.hpp"

namespace testutil {

inline std::vector<circlefit::Point2D> points_on_circle(double cx, double cy, double r, int n,
                                                        double t0 = 0.0,
                                                        double t1 = 2.0 * std::numbers::pi) {
    std::vector<circlefit::Point2D> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * i / n;
        pts.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
    }
    return pts;
}

// Midpoint circle rasterizer; clips at the image border.
inline void rasterize_circle(circlefit::EdgeImage& img, int cx, int cy, int r) {
    auto plot = [&](int px, int py) {
        if (px >= 0 && px < img.width && py >= 0 && py < img.height) img.set(px, py, true);
    };
    int x = r, y = 0, err = 1 - r;
    while (x >= y) {
        plot(cx + x, cy + y);
        plot(cx + y, cy + x);
        plot(cx - y, cy + x);
        plot(cx - x, cy + y);
        plot(cx - x, cy - y);
        plot(cx - y, cy - x);
        plot(cx + y, cy - x);
        plot(cx + x, cy - y);
        ++y;
        if (err < 0) {
            err += 2 * y + 1;
        } else {
            --x;
            err += 2 * (y - x) + 1;
        }
    }
}

}  // namespace testutil
