#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circlefit/geometry.hpp"

namespace circlefit {

struct EdgeImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bitmap;  // row-major, 1 = edgel

    bool at(int x, int y) const { return bitmap[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) {
        bitmap[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
    }
    std::size_t edgel_count() const;

    static EdgeImage blank(int width, int height);
};

// Netpbm readers: PBM P1/P4 (1 = black = edgel) and PGM P2/P5 (value below
// the threshold = black = edgel, default 128). 16-bit PGM and color formats
// are rejected.
// Throws FileMissing, MalformedHeader, UnsupportedFormat.
EdgeImage load_edge_image(const std::string& path, int pgm_threshold = 128);

// Edgel coordinates at pixel centers (ix + 0.5, iy + 0.5), row-major order.
std::vector<Point2D> edgels(const EdgeImage& img);

// Exact C(n, 3) without overflow for n up to 1e6.
std::uint64_t triplet_count(std::uint64_t n);

}  // namespace circlefit
