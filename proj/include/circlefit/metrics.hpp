#pragma once

#include <vector>

#include "circlefit/geometry.hpp"

namespace circlefit {

// Disk IoU: lens area over union area. 1 for identical circles, 0 when disjoint.
double jaccard(const Circle& fitted, const Circle& truth);

// Mean absolute parameter error (|dx| + |dy| + |dr|) / 3.
double avg_distance(const Circle& fitted, const Circle& truth);

// Root mean square parameter error sqrt((dx^2 + dy^2 + dr^2) / 3).
double rmse(const Circle& fitted, const Circle& truth);

struct FitReport {
    Circle fitted;
    Circle truth;
    double jaccard = 0.0;
    double ad = 0.0;
    double rmse = 0.0;
    double elapsed = 0.0;  // seconds

    static FitReport score(const Circle& fitted, const Circle& truth, double elapsed = 0.0);
};

struct Aggregate {
    double jaccard_mean = 0.0, jaccard_sd = 0.0;
    double ad_mean = 0.0, ad_sd = 0.0;
    double rmse_mean = 0.0, rmse_sd = 0.0;
    double elapsed_mean = 0.0, elapsed_sd = 0.0;
    std::size_t count = 0;
};

// Arithmetic mean and sample standard deviation per metric.
// Throws EmptyList on empty input.
Aggregate aggregate(const std::vector<FitReport>& reports);

}  // namespace circlefit
