#include "circlefit/accumulator.hpp"

#include <algorithm>
#include <cmath>

namespace circlefit {

namespace {

int axis_bins(double lo, double hi, double bin) {
    return static_cast<int>(std::ceil((hi - lo) / bin));
}

// Widens [lo, hi] symmetrically until it spans at least min_bins bins.
void pad_axis(double& lo, double& hi, double bin, int min_bins) {
    const double need = min_bins * bin;
    if (hi - lo >= need) return;
    const double grow = (need - (hi - lo)) / 2.0;
    lo -= grow;
    hi += grow;
}

}  // namespace

int BinSpec::nx() const { return axis_bins(x_min, x_max, bin_size); }
int BinSpec::ny() const { return axis_bins(y_min, y_max, bin_size); }
int BinSpec::nr() const { return axis_bins(r_min, r_max, bin_size); }

void BinSpec::validate() const {
    if (!(bin_size > 0.0)) throw Error("BinSpec: bin_size must be positive");
    if (!(x_max > x_min) || !(y_max > y_min) || !(r_max > r_min))
        throw Error("BinSpec: axis max must exceed min");
    if (!(r_min > 0.0)) throw Error("BinSpec: r_min must be positive");
    if (nx() < 3 || ny() < 3 || nr() < 3)
        throw Error("BinSpec: every axis needs at least 3 bins");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
        !std::isfinite(y_max) || !std::isfinite(r_min) || !std::isfinite(r_max))
        throw Error("BinSpec: ranges must be finite");
}

BinSpec BinSpec::for_points(std::span<const Point2D> pts, double bin_size) {
    if (pts.empty()) throw Error("BinSpec::for_points: empty point set");
    double mnx = pts[0].x, mxx = pts[0].x, mny = pts[0].y, mxy = pts[0].y;
    for (const auto& p : pts) {
        mnx = std::min(mnx, p.x);
        mxx = std::max(mxx, p.x);
        mny = std::min(mny, p.y);
        mxy = std::max(mxy, p.y);
    }
    const double sx = mxx - mnx;
    const double sy = mxy - mny;
    BinSpec s;
    s.bin_size = bin_size;
    s.x_min = mnx - 0.25 * sx;
    s.x_max = mxx + 0.25 * sx;
    s.y_min = mny - 0.25 * sy;
    s.y_max = mxy + 0.25 * sy;
    s.r_min = bin_size;
    s.r_max = std::max(s.r_min + 3.0 * bin_size, std::hypot(sx, sy));
    pad_axis(s.x_min, s.x_max, bin_size, 3);
    pad_axis(s.y_min, s.y_max, bin_size, 3);
    s.validate();
    return s;
}

BinSpec BinSpec::for_image(int width, int height, double bin_size) {
    BinSpec s;
    s.bin_size = bin_size;
    s.x_min = 0.0;
    s.x_max = static_cast<double>(width);
    s.y_min = 0.0;
    s.y_max = static_cast<double>(height);
    s.r_min = 3.0;
    s.r_max = std::max(s.r_min + 3.0 * bin_size,
                       std::ceil(std::min(width, height) / 2.0));
    pad_axis(s.x_min, s.x_max, bin_size, 3);
    pad_axis(s.y_min, s.y_max, bin_size, 3);
    s.validate();
    return s;
}

Accumulator3D::Accumulator3D(const BinSpec& spec, bool force_sparse) : spec_(spec) {
    spec_.validate();
    nx_ = spec_.nx();
    ny_ = spec_.ny();
    nr_ = spec_.nr();
    const std::uint64_t cells = static_cast<std::uint64_t>(nx_) * ny_ * nr_;
    dense_mode_ = !force_sparse && cells <= (1ull << 24);
    if (dense_mode_) dense_.assign(cells, 0);
}

std::uint64_t Accumulator3D::key(int ix, int iy, int ir) const {
    return (static_cast<std::uint64_t>(ix) * ny_ + iy) * nr_ + ir;
}

std::uint32_t& Accumulator3D::slot(std::uint64_t k) {
    if (dense_mode_) return dense_[k];
    return map_[k];
}

bool Accumulator3D::vote(const Circle& c) {
    const double bx = (c.x - spec_.x_min) / spec_.bin_size;
    const double by = (c.y - spec_.y_min) / spec_.bin_size;
    const double br = (c.r - spec_.r_min) / spec_.bin_size;
    if (bx < 0.0 || by < 0.0 || br < 0.0) return false;
    const int ix = static_cast<int>(bx);
    const int iy = static_cast<int>(by);
    const int ir = static_cast<int>(br);
    if (ix >= nx_ || iy >= ny_ || ir >= nr_) return false;
    // half-open bins: a value exactly at axis max maps to index n and is
    // already rejected above only when the range divides evenly; re-check.
    if (c.x >= spec_.x_max || c.y >= spec_.y_max || c.r >= spec_.r_max) return false;
    std::uint32_t& cell = slot(key(ix, iy, ir));
    if (cell == 0) touched_.push_back(key(ix, iy, ir));
    ++cell;
    ++total_;
    return true;
}

std::uint32_t Accumulator3D::at(int ix, int iy, int ir) const {
    if (ix < 0 || iy < 0 || ir < 0 || ix >= nx_ || iy >= ny_ || ir >= nr_) return 0;
    const std::uint64_t k = key(ix, iy, ir);
    if (dense_mode_) return dense_[k];
    auto it = map_.find(k);
    return it == map_.end() ? 0u : it->second;
}

std::vector<CellRef> Accumulator3D::top_k(int k) const {
    if (total_ == 0) throw EmptyAccumulator();
    std::vector<CellRef> cells;
    cells.reserve(touched_.size());
    for (std::uint64_t key_ : touched_) {
        CellRef c;
        c.ir = static_cast<int>(key_ % nr_);
        c.iy = static_cast<int>((key_ / nr_) % ny_);
        c.ix = static_cast<int>(key_ / (static_cast<std::uint64_t>(nr_) * ny_));
        c.raw_votes = dense_mode_ ? dense_[key_] : map_.at(key_);
        cells.push_back(c);
    }
    auto better = [](const CellRef& a, const CellRef& b) {
        if (a.raw_votes != b.raw_votes) return a.raw_votes > b.raw_votes;
        if (a.ir != b.ir) return a.ir < b.ir;
        if (a.ix != b.ix) return a.ix < b.ix;
        return a.iy < b.iy;
    };
    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(k), cells.size());
    std::partial_sort(cells.begin(), cells.begin() + want, cells.end(), better);
    cells.resize(want);
    return cells;
}

std::int64_t Accumulator3D::chebyshev_sum(int ix, int iy, int ir, int radius) const {
    std::int64_t sum = 0;
    for (int dx = -radius; dx <= radius; ++dx)
        for (int dy = -radius; dy <= radius; ++dy)
            for (int dr = -radius; dr <= radius; ++dr)
                sum += at(ix + dx, iy + dy, ir + dr);
    return sum;
}

Circle Accumulator3D::center_of_mass_refine(int ix, int iy, int ir) const {
    double w_total = 0.0, sx = 0.0, sy = 0.0, sr = 0.0;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dr = -1; dr <= 1; ++dr) {
                const int jx = ix + dx, jy = iy + dy, jr = ir + dr;
                if (jx < 0 || jy < 0 || jr < 0 || jx >= nx_ || jy >= ny_ || jr >= nr_) continue;
                const double w = at(jx, jy, jr);
                w_total += w;
                sx += w * x_center(jx);
                sy += w * y_center(jy);
                sr += w * r_center(jr);
            }
    if (w_total == 0.0) return Circle{x_center(ix), y_center(iy), r_center(ir)};
    return Circle{sx / w_total, sy / w_total, sr / w_total};
}

}  // namespace circlefit
