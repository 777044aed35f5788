#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "circlefit/accumulator.hpp"
#include "circlefit/geometry.hpp"

namespace circlefit {

struct PointSet {
    enum class Unit : std::uint8_t { px, mm };
    std::vector<Point2D> points;
    Unit unit = Unit::mm;
};

struct DetectorConfig {
    int n_triplets = 5000;
    int top_n = 5;
    int kernel_radius = 1;
    double max_resample_factor = 3.0;  // cap on total draws / n_triplets
    double bin_size = 1.0;             // used when bin_spec is not given
    std::optional<BinSpec> bin_spec;   // explicit parameter ranges
    std::uint64_t rng_seed = 0;
};

struct FbiDiagnostics {
    std::uint64_t draws = 0;
    std::uint64_t accepted = 0;    // votes that landed in range
    std::uint64_t rejected = 0;    // finite circles outside the bin ranges
    std::uint64_t degenerate = 0;  // collinear/coincident triplets
    std::uint64_t accumulator_total = 0;
    std::vector<CellRef> candidates;  // top cells with smoothed counts filled in
};

struct FbiResult {
    Circle circle;
    FbiDiagnostics diag;
};

// Triplet-voting detector: sample index-distinct triplets, circle through
// each, vote into a discretized (x, y, r) accumulator, smooth the top cells
// with a Chebyshev-ball sum, then refine the winner by a 27-cell center of
// mass. Deterministic for a fixed seed.
// Throws InsufficientPoints, EmptyAccumulator.
FbiResult fbi_detect(const PointSet& pts, const DetectorConfig& cfg);

// Randomized Hough baseline: triplet circles merged into a dynamic candidate
// list (tolerance of one bin per axis against the running mean); returns the
// mean of the best-evidenced candidate.
// Throws InsufficientPoints, NoAcceptedCandidate.
Circle rht_detect(const PointSet& pts, const DetectorConfig& cfg);

// Randomized circle detection baseline: triplet hypotheses scored by inlier
// count within one bin of the boundary; the best hypothesis must cover at
// least 60% of the points.
// Throws InsufficientPoints, NoAcceptedCandidate.
Circle rcd_detect(const PointSet& pts, const DetectorConfig& cfg);

// Algebraic least-squares fit of the linearized circle equation. Exact on
// noise-free samples; used as the reference fitter in tests.
// Throws InsufficientPoints, SingularSystem.
Circle lsq_fit(const PointSet& pts);

}  // namespace circlefit
