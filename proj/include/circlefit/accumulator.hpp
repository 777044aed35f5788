#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "circlefit/geometry.hpp"

namespace circlefit {

// Uniform binning of the (x, y, r) parameter space. Bins are half-open:
// index = floor((v - min)/bin_size); v == max falls outside. Every axis must
// hold at least 3 bins so interior cells have a full 26-neighborhood.
struct BinSpec {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    double r_min = 1.0, r_max = 2.0;
    double bin_size = 1.0;

    int nx() const;
    int ny() const;
    int nr() const;

    // Throws Error when any invariant fails (bin_size <= 0, max <= min,
    // r_min <= 0, or fewer than 3 bins on an axis).
    void validate() const;

    // Data bounding box expanded by 50% of its span (25% per side);
    // r from one bin up to the unexpanded bbox diagonal. Axes are padded to
    // the 3-bin minimum when the data is too tight.
    static BinSpec for_points(std::span<const Point2D> pts, double bin_size);

    // Pixel domain: x in [0, w], y in [0, h], r in [3 px, ceil(min(w,h)/2)].
    static BinSpec for_image(int width, int height, double bin_size);
};

struct CellRef {
    int ix = 0, iy = 0, ir = 0;
    std::uint32_t raw_votes = 0;
    std::int64_t smoothed_votes = 0;
};

// Vote array over BinSpec cells. Dense storage up to 2^24 cells, hash map
// above. A touched-cell list makes top_k independent of total cell count.
class Accumulator3D {
public:
    explicit Accumulator3D(const BinSpec& spec, bool force_sparse = false);

    // Increments the containing cell; false (and no mutation) when out of range.
    bool vote(const Circle& c);

    std::uint32_t at(int ix, int iy, int ir) const;
    std::uint64_t total_votes() const { return total_; }
    const BinSpec& spec() const { return spec_; }
    bool sparse() const { return !dense_mode_; }

    // k highest raw counts, descending; ties broken lexicographically on
    // (ir, ix, iy) ascending. Shorter when fewer cells are nonzero.
    // Throws EmptyAccumulator when no votes landed.
    std::vector<CellRef> top_k(int k) const;

    // Sum of raw votes over the (2*radius+1)^3 box around the cell, clipped
    // at the borders.
    std::int64_t chebyshev_sum(int ix, int iy, int ir, int radius) const;

    // Vote-weighted mean of bin centers over the clipped 27-neighborhood,
    // using raw counts. Zero-mass neighborhoods fall back to the cell center.
    Circle center_of_mass_refine(int ix, int iy, int ir) const;

    double x_center(int ix) const { return spec_.x_min + (ix + 0.5) * spec_.bin_size; }
    double y_center(int iy) const { return spec_.y_min + (iy + 0.5) * spec_.bin_size; }
    double r_center(int ir) const { return spec_.r_min + (ir + 0.5) * spec_.bin_size; }

private:
    std::uint64_t key(int ix, int iy, int ir) const;
    std::uint32_t& slot(std::uint64_t k);

    BinSpec spec_;
    int nx_, ny_, nr_;
    bool dense_mode_;
    std::vector<std::uint32_t> dense_;
    std::unordered_map<std::uint64_t, std::uint32_t> map_;
    std::vector<std::uint64_t> touched_;  // keys in first-vote order
    std::uint64_t total_ = 0;
};

}  // namespace circlefit
