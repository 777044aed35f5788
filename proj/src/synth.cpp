#include "circlefit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <utility>

#include <json.hpp>

#include "circlefit/errors.hpp"
#include "circlefit/rng.hpp"

namespace circlefit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double round_half_away(double v) {
    return std::copysign(std::floor(std::abs(v) + 0.5), v);
}

}  // namespace

void B1Spec::validate() const {
    if (n_points < 3) throw Error("B1Spec: n_points < 3");
    if (sigma < 0.0) throw Error("B1Spec: sigma < 0");
    if (n_outliers < 0 || n_outliers > n_points) throw Error("B1Spec: bad n_outliers");
    if (!(r > 0.0)) throw Error("B1Spec: r <= 0");
}

double B2Spec::separation() const {
    return std::max(3.0 * sigma(), 0.01 * r);
}

void B2Spec::validate() const {
    if (n_points < 3) throw Error("B2Spec: n_points < 3");
    if (noise_pct < 0.0) throw Error("B2Spec: noise_pct < 0");
    if (outlier_pct < 0 || outlier_pct > 100) throw Error("B2Spec: outlier_pct outside [0, 100]");
    if (q < 0) throw Error("B2Spec: q < 0");
    if (!(r > 0.0)) throw Error("B2Spec: r <= 0");
}

LabeledDataset gen_b1(const B1Spec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    LabeledDataset ds;
    ds.truth = Circle{spec.cx, spec.cy, spec.r};
    ds.effective_truth = ds.truth;

    std::vector<double> theta(spec.n_points);
    for (auto& t : theta) t = rng.uniform(0.0, std::numbers::pi);  // upper semicircle

    std::vector<double> radius(spec.n_points);
    for (auto& rr : radius)
        rr = spec.r + (spec.sigma > 0.0 ? rng.normal(0.0, spec.sigma) : 0.0);

    ds.points.resize(spec.n_points);
    ds.labels.assign(spec.n_points, PointLabel::inlier);
    for (int i = 0; i < spec.n_points; ++i) {
        ds.points[i] = Point2D{spec.cx + radius[i] * std::cos(theta[i]),
                               spec.cy + radius[i] * std::sin(theta[i])};
    }

    // The last n_outliers points are rebuilt on the same rays, displaced
    // radially by 5-10 sigma with a random sign and no Gaussian noise.
    for (int i = spec.n_points - spec.n_outliers; i < spec.n_points; ++i) {
        const double mag = rng.uniform(5.0 * spec.sigma, 10.0 * spec.sigma);
        const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
        const double rr = spec.r + sign * mag;
        ds.points[i] = Point2D{spec.cx + rr * std::cos(theta[i]),
                               spec.cy + rr * std::sin(theta[i])};
        ds.labels[i] = PointLabel::outlier;
    }
    ds.n_inliers = spec.n_points - spec.n_outliers;
    ds.n_outliers = spec.n_outliers;
    return ds;
}

QuantizeResult quantize(std::span<const Point2D> points, std::span<const PointLabel> labels,
                        const Circle& truth, int q) {
    if (q < 1) throw Error("quantize: q must be >= 1");
    if (points.size() != labels.size()) throw Error("quantize: points/labels size mismatch");

    using Cell = std::pair<long long, long long>;
    std::map<Cell, bool> merged;  // true once any inlier lands in the cell
    std::set<Cell> in_cells, out_cells;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Cell c{static_cast<long long>(round_half_away(points[i].x / q)),
                     static_cast<long long>(round_half_away(points[i].y / q))};
        const bool is_in = labels[i] == PointLabel::inlier;
        auto [it, fresh] = merged.emplace(c, is_in);
        if (!fresh && is_in) it->second = true;
        (is_in ? in_cells : out_cells).insert(c);
    }

    QuantizeResult res;
    res.effective_truth = Circle{truth.x / q, truth.y / q, truth.r / q};
    res.distinct_inlier_cells = static_cast<int>(in_cells.size());
    res.distinct_outlier_cells = static_cast<int>(out_cells.size());
    res.points.reserve(merged.size());
    res.labels.reserve(merged.size());
    for (const auto& [cell, is_in] : merged) {
        res.points.push_back(Point2D{static_cast<double>(cell.first),
                                     static_cast<double>(cell.second)});
        res.labels.push_back(is_in ? PointLabel::inlier : PointLabel::outlier);
    }
    return res;
}

LabeledDataset gen_b2(const B2Spec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    LabeledDataset ds;
    ds.truth = Circle{spec.cx, spec.cy, spec.r};
    ds.effective_truth = ds.truth;
    const double sigma = spec.sigma();

    std::vector<double> theta(spec.n_points);
    for (auto& t : theta) t = rng.uniform(0.0, kTwoPi);

    ds.points.resize(spec.n_points);
    ds.labels.assign(spec.n_points, PointLabel::inlier);
    for (int i = 0; i < spec.n_points; ++i) {
        const double rr = spec.r + (sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0);
        ds.points[i] = Point2D{spec.cx + rr * std::cos(theta[i]),
                               spec.cy + rr * std::sin(theta[i])};
    }

    const int n_out = spec.n_points * spec.outlier_pct / 100;
    const double sep = spec.separation();
    for (int i = spec.n_points - n_out; i < spec.n_points; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 100000; ++attempt) {
            const Point2D cand{rng.uniform(spec.cx - 2.0 * spec.r, spec.cx + 2.0 * spec.r),
                               rng.uniform(spec.cy - 2.0 * spec.r, spec.cy + 2.0 * spec.r)};
            if (std::abs(signed_residual(ds.truth, cand)) > sep) {
                ds.points[i] = cand;
                ds.labels[i] = PointLabel::outlier;
                placed = true;
                break;
            }
        }
        if (!placed) throw SeparationInfeasible();
    }
    ds.n_inliers = spec.n_points - n_out;
    ds.n_outliers = n_out;

    if (spec.q > 0) {
        QuantizeResult qr = quantize(ds.points, ds.labels, ds.truth, spec.q);
        ds.points = std::move(qr.points);
        ds.labels = std::move(qr.labels);
        ds.effective_truth = qr.effective_truth;
        ds.q = spec.q;
        ds.distinct_inlier_cells = qr.distinct_inlier_cells;
        ds.distinct_outlier_cells = qr.distinct_outlier_cells;
    }
    return ds;
}

std::string describe(const B1Spec& spec) {
    nlohmann::json j;
    j["experiment"] = "b1";
    j["center"] = {spec.cx, spec.cy};
    j["radius"] = spec.r;
    j["n_points"] = spec.n_points;
    j["sigma"] = spec.sigma;
    j["n_outliers"] = spec.n_outliers;
    j["seed"] = spec.seed;
    return j.dump();
}

std::string describe(const B2Spec& spec) {
    nlohmann::json j;
    j["experiment"] = "b2";
    j["center"] = {spec.cx, spec.cy};
    j["radius"] = spec.r;
    j["n_points"] = spec.n_points;
    j["noise_pct"] = spec.noise_pct;
    j["outlier_pct"] = spec.outlier_pct;
    j["q"] = spec.q;
    j["seed"] = spec.seed;
    return j.dump();
}

void write_dataset(const LabeledDataset& ds, const std::string& csv_path,
                   const std::string& spec_json) {
    std::ofstream csv(csv_path);
    if (!csv) throw Error("cannot write " + csv_path);
    csv << "x,y,label\n";
    char buf[80];
    for (std::size_t i = 0; i < ds.points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%s\n", ds.points[i].x, ds.points[i].y,
                      ds.labels[i] == PointLabel::inlier ? "in" : "out");
        csv << buf;
    }

    nlohmann::json meta;
    meta["spec"] = nlohmann::json::parse(spec_json);
    meta["truth"] = {{"x", ds.truth.x}, {"y", ds.truth.y}, {"r", ds.truth.r}};
    meta["n_inliers"] = ds.n_inliers;
    meta["n_outliers"] = ds.n_outliers;
    if (ds.q > 0) {
        meta["effective_truth"] = {{"x", ds.effective_truth.x},
                                   {"y", ds.effective_truth.y},
                                   {"r", ds.effective_truth.r}};
        meta["q"] = ds.q;
        meta["distinct_inlier_cells"] = ds.distinct_inlier_cells;
        meta["distinct_outlier_cells"] = ds.distinct_outlier_cells;
    }
    std::ofstream side(csv_path + ".json");
    if (!side) throw Error("cannot write " + csv_path + ".json");
    side << meta.dump(2) << "\n";
}

}  // namespace circlefit
