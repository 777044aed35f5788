#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "circlefit/geometry.hpp"

namespace circlefit {

enum class PointLabel : std::uint8_t { inlier = 0, outlier = 1 };

// Semicircle benchmark: 50 points on the upper half of circle (50, 60, 100),
// radial Gaussian noise, and 0-5 of them replaced by radial outliers at
// 5-10 sigma from the arc.
struct B1Spec {
    double cx = 50.0, cy = 60.0, r = 100.0;
    int n_points = 50;
    double sigma = 1.0;
    int n_outliers = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Full-circle benchmark: 100 points on circle (120, 120, 120) with radial
// noise sigma = noise_pct/100 * r, a fraction replaced by box outliers kept
// away from the circle, then optional quantization by divisor q.
struct B2Spec {
    double cx = 120.0, cy = 120.0, r = 120.0;
    int n_points = 100;
    double noise_pct = 0.0;   // canonical grid uses {0, 1, 2, 5, 10}
    int outlier_pct = 0;      // canonical grid uses {0, 10, ..., 70}
    int q = 0;                // 0 = no quantization; canonical {0,1,2,3,6,12,24,40}
    std::uint64_t seed = 0;

    double sigma() const { return noise_pct / 100.0 * r; }
    // Minimum |signed residual| for generated outliers.
    double separation() const;
    void validate() const;
};

struct LabeledDataset {
    std::vector<Point2D> points;
    std::vector<PointLabel> labels;
    Circle truth;
    Circle effective_truth;  // equals truth when q == 0
    int q = 0;
    int n_inliers = 0;   // pre-quantization label counts
    int n_outliers = 0;
    // Distinct grid cells per class after quantization (a cell receiving both
    // kinds of pre-image counts once in each). Zero when q == 0.
    int distinct_inlier_cells = 0;
    int distinct_outlier_cells = 0;
};

struct QuantizeResult {
    std::vector<Point2D> points;     // one point per occupied cell, sorted by (x, y)
    std::vector<PointLabel> labels;  // inlier if any pre-image was an inlier
    Circle effective_truth;          // truth scaled by exact division
    int distinct_inlier_cells = 0;
    int distinct_outlier_cells = 0;
};

// Grid collapse: (round(x/q), round(y/q)) with half-away-from-zero rounding,
// duplicates merged.
QuantizeResult quantize(std::span<const Point2D> points, std::span<const PointLabel> labels,
                        const Circle& truth, int q);

LabeledDataset gen_b1(const B1Spec& spec);

// Throws SeparationInfeasible when an outlier cannot be placed outside the
// separation band within 1e5 rejection draws.
LabeledDataset gen_b2(const B2Spec& spec);

// CSV with header "x,y,label" plus a JSON sidecar (same path + ".json")
// carrying the generating spec, seed, truth, and survivor stats.
void write_dataset(const LabeledDataset& ds, const std::string& csv_path,
                   const std::string& spec_json);

// Serialized spec records for the sidecar.
std::string describe(const B1Spec& spec);
std::string describe(const B2Spec& spec);

}  // namespace circlefit
