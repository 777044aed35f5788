#include "circlefit/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include "circlefit/errors.hpp"
#include "circlefit/rng.hpp"

namespace circlefit {

namespace {

BinSpec resolve_bins(const PointSet& pts, const DetectorConfig& cfg) {
    if (cfg.bin_spec) {
        cfg.bin_spec->validate();
        return *cfg.bin_spec;
    }
    return BinSpec::for_points(pts.points, cfg.bin_size);
}

void require_points(const PointSet& pts, std::size_t need = 3) {
    if (pts.points.size() < need) throw InsufficientPoints(pts.points.size(), need);
}

Circle triplet_circle(const PointSet& pts, Rng& rng, bool& ok) {
    std::size_t idx[3];
    rng.sample3(pts.points.size(), idx);
    Circle c;
    ok = try_circle_from_three_points(pts.points[idx[0]], pts.points[idx[1]], pts.points[idx[2]], c);
    return c;
}

}  // namespace

FbiResult fbi_detect(const PointSet& pts, const DetectorConfig& cfg) {
    require_points(pts);
    if (cfg.n_triplets < 1 || cfg.top_n < 1 || cfg.kernel_radius < 0)
        throw Error("DetectorConfig: n_triplets >= 1, top_n >= 1, kernel_radius >= 0 required");

    const BinSpec bins = resolve_bins(pts, cfg);
    Accumulator3D acc(bins);
    Rng rng(cfg.rng_seed);
    FbiResult res;

    const std::uint64_t target = static_cast<std::uint64_t>(cfg.n_triplets);
    const std::uint64_t max_draws = static_cast<std::uint64_t>(
        std::llround(cfg.max_resample_factor * cfg.n_triplets));
    while (res.diag.accepted < target && res.diag.draws < max_draws) {
        ++res.diag.draws;
        bool ok = false;
        const Circle c = triplet_circle(pts, rng, ok);
        if (!ok) {
            ++res.diag.degenerate;
            continue;
        }
        if (acc.vote(c))
            ++res.diag.accepted;
        else
            ++res.diag.rejected;
    }
    res.diag.accumulator_total = acc.total_votes();
    if (acc.total_votes() == 0) throw EmptyAccumulator();

    res.diag.candidates = acc.top_k(cfg.top_n);
    for (CellRef& cand : res.diag.candidates)
        cand.smoothed_votes = acc.chebyshev_sum(cand.ix, cand.iy, cand.ir, cfg.kernel_radius);

    const CellRef* best = &res.diag.candidates.front();
    for (const CellRef& cand : res.diag.candidates) {
        if (cand.smoothed_votes > best->smoothed_votes) {
            best = &cand;
        } else if (cand.smoothed_votes == best->smoothed_votes) {
            // lexicographic (ir, ix, iy) ascending, same rule as top_k
            const auto a = std::tuple(cand.ir, cand.ix, cand.iy);
            const auto b = std::tuple(best->ir, best->ix, best->iy);
            if (a < b) best = &cand;
        }
    }
    res.circle = acc.center_of_mass_refine(best->ix, best->iy, best->ir);
    return res;
}

Circle rht_detect(const PointSet& pts, const DetectorConfig& cfg) {
    require_points(pts);
    const BinSpec bins = resolve_bins(pts, cfg);
    const double tol = bins.bin_size;
    Rng rng(cfg.rng_seed);

    struct Cand {
        std::uint64_t hits = 0;
        double sx = 0.0, sy = 0.0, sr = 0.0;
    };
    struct KeyHash {
        std::size_t operator()(const std::tuple<long long, long long, long long>& k) const {
            auto [a, b, c] = k;
            std::uint64_t h = hash_combine(hash_combine(mix64(static_cast<std::uint64_t>(a)),
                                                        static_cast<std::uint64_t>(b)),
                                           static_cast<std::uint64_t>(c));
            return static_cast<std::size_t>(h);
        }
    };
    using Key = std::tuple<long long, long long, long long>;
    std::unordered_map<Key, Cand, KeyHash> cands;

    for (int it = 0; it < cfg.n_triplets; ++it) {
        bool ok = false;
        const Circle c = triplet_circle(pts, rng, ok);
        if (!ok) continue;
        const Key base{static_cast<long long>(std::floor(c.x / tol)),
                       static_cast<long long>(std::floor(c.y / tol)),
                       static_cast<long long>(std::floor(c.r / tol))};
        // look for an existing candidate whose running mean is within one
        // tolerance on every axis; scan the 27 surrounding key cells
        Cand* hit = nullptr;
        for (long long dx = -1; dx <= 1 && !hit; ++dx)
            for (long long dy = -1; dy <= 1 && !hit; ++dy)
                for (long long dr = -1; dr <= 1 && !hit; ++dr) {
                    auto found = cands.find(Key{std::get<0>(base) + dx, std::get<1>(base) + dy,
                                                std::get<2>(base) + dr});
                    if (found == cands.end()) continue;
                    Cand& cd = found->second;
                    const double n = static_cast<double>(cd.hits);
                    if (std::abs(cd.sx / n - c.x) <= tol && std::abs(cd.sy / n - c.y) <= tol &&
                        std::abs(cd.sr / n - c.r) <= tol)
                        hit = &cd;
                }
        if (hit) {
            ++hit->hits;
            hit->sx += c.x;
            hit->sy += c.y;
            hit->sr += c.r;
        } else {
            // first candidate keeps the slot; a same-cell miss is dropped
            auto [slot, fresh] = cands.emplace(base, Cand{1, c.x, c.y, c.r});
            (void)slot;
            (void)fresh;
        }
    }

    constexpr std::uint64_t kEvidenceThreshold = 5;
    const Cand* best = nullptr;
    Key best_key{};
    for (const auto& [key, cand] : cands) {
        if (!best || cand.hits > best->hits || (cand.hits == best->hits && key < best_key)) {
            best = &cand;
            best_key = key;
        }
    }
    if (!best || best->hits < kEvidenceThreshold) throw NoAcceptedCandidate();
    const double n = static_cast<double>(best->hits);
    return Circle{best->sx / n, best->sy / n, best->sr / n};
}

Circle rcd_detect(const PointSet& pts, const DetectorConfig& cfg) {
    require_points(pts);
    const BinSpec bins = resolve_bins(pts, cfg);
    const double tol = bins.bin_size;
    constexpr double kAcceptRatio = 0.6;
    Rng rng(cfg.rng_seed);

    Circle best{};
    std::size_t best_inliers = 0;
    for (int it = 0; it < cfg.n_triplets; ++it) {
        bool ok = false;
        const Circle c = triplet_circle(pts, rng, ok);
        if (!ok) continue;
        std::size_t inliers = 0;
        for (const Point2D& p : pts.points)
            if (std::abs(signed_residual(c, p)) <= tol) ++inliers;
        if (inliers > best_inliers) {
            best_inliers = inliers;
            best = c;
        }
    }
    if (best_inliers < static_cast<std::size_t>(std::ceil(kAcceptRatio * pts.points.size())))
        throw NoAcceptedCandidate();
    return best;
}

Circle lsq_fit(const PointSet& pts) {
    require_points(pts);
    // Linearized circle equation x^2 + y^2 + a x + b y + c = 0, solved by the
    // 3x3 normal equations with partial pivoting.
    double m[3][4] = {};
    for (const Point2D& p : pts.points) {
        const double z = p.x * p.x + p.y * p.y;
        m[0][0] += p.x * p.x;
        m[0][1] += p.x * p.y;
        m[0][2] += p.x;
        m[0][3] += -z * p.x;
        m[1][1] += p.y * p.y;
        m[1][2] += p.y;
        m[1][3] += -z * p.y;
        m[2][3] += -z;
    }
    m[1][0] = m[0][1];
    m[2][0] = m[0][2];
    m[2][1] = m[1][2];
    m[2][2] = static_cast<double>(pts.points.size());

    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(m[i][j]));

    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        if (std::abs(m[pivot][col]) < 1e-12 * scale) throw SingularSystem();
        if (pivot != col)
            for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[pivot][j]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = m[row][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[row][j] -= f * m[col][j];
        }
    }
    double sol[3];
    for (int i = 2; i >= 0; --i) {
        double v = m[i][3];
        for (int j = i + 1; j < 3; ++j) v -= m[i][j] * sol[j];
        sol[i] = v / m[i][i];
    }
    const double a = sol[0], b = sol[1], c = sol[2];
    const double r2 = a * a / 4.0 + b * b / 4.0 - c;
    if (!(r2 > 0.0) || !std::isfinite(r2)) throw SingularSystem();
    return Circle{-a / 2.0, -b / 2.0, std::sqrt(r2)};
}

}  // namespace circlefit
