#include "circlefit/metrics.hpp"

#include <cmath>
#include <numbers>

#include "circlefit/errors.hpp"

namespace circlefit {

double jaccard(const Circle& fitted, const Circle& truth) {
    const double inter = disk_intersection_area(fitted, truth);
    const double uni = std::numbers::pi * (fitted.r * fitted.r + truth.r * truth.r) - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

double avg_distance(const Circle& fitted, const Circle& truth) {
    return (std::abs(fitted.x - truth.x) + std::abs(fitted.y - truth.y) +
            std::abs(fitted.r - truth.r)) / 3.0;
}

double rmse(const Circle& fitted, const Circle& truth) {
    const double dx = fitted.x - truth.x;
    const double dy = fitted.y - truth.y;
    const double dr = fitted.r - truth.r;
    return std::sqrt((dx * dx + dy * dy + dr * dr) / 3.0);
}

FitReport FitReport::score(const Circle& fitted, const Circle& truth, double elapsed) {
    FitReport rep;
    rep.fitted = fitted;
    rep.truth = truth;
    rep.jaccard = circlefit::jaccard(fitted, truth);
    rep.ad = avg_distance(fitted, truth);
    rep.rmse = circlefit::rmse(fitted, truth);
    rep.elapsed = elapsed;
    return rep;
}

namespace {

struct MeanSd {
    double mean = 0.0, sd = 0.0;
};

template <typename Get>
MeanSd mean_sd(const std::vector<FitReport>& reports, Get get) {
    double sum = 0.0;
    for (const auto& r : reports) sum += get(r);
    const double mean = sum / reports.size();
    if (reports.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (const auto& r : reports) {
        const double d = get(r) - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (reports.size() - 1))};
}

}  // namespace

Aggregate aggregate(const std::vector<FitReport>& reports) {
    if (reports.empty()) throw EmptyList();
    Aggregate a;
    a.count = reports.size();
    auto j = mean_sd(reports, [](const FitReport& r) { return r.jaccard; });
    auto d = mean_sd(reports, [](const FitReport& r) { return r.ad; });
    auto m = mean_sd(reports, [](const FitReport& r) { return r.rmse; });
    auto e = mean_sd(reports, [](const FitReport& r) { return r.elapsed; });
    a.jaccard_mean = j.mean;
    a.jaccard_sd = j.sd;
    a.ad_mean = d.mean;
    a.ad_sd = d.sd;
    a.rmse_mean = m.mean;
    a.rmse_sd = m.sd;
    a.elapsed_mean = e.mean;
    a.elapsed_sd = e.sd;
    return a;
}

}  // namespace circlefit
