#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "circlefit/metrics.hpp"

namespace circlefit {

// One benchmark sweep: a parameter grid x detectors x trials.
struct SweepConfig {
    enum class Experiment : std::uint8_t { b1, b2 };
    Experiment experiment = Experiment::b1;
    std::vector<std::string> detectors = {"fbi"};  // subset of fbi/rht/rcd/lsq
    int trials = 100;
    std::uint64_t base_seed = 42;

    std::vector<int> b1_outliers = {0, 1, 2, 3, 4, 5};
    std::vector<double> b2_noise = {0, 1, 2, 5, 10};
    std::vector<int> b2_outliers = {0, 10, 20, 30, 40, 50, 60, 70};
    std::vector<int> b2_q = {0, 1, 2, 3, 6, 12, 24, 40};

    int n_triplets = 5000;
    double bin_size = 1.0;
    int workers = 0;      // 0 = hardware concurrency
    bool timing = false;  // false writes elapsed_s as 0 so output is byte-stable

    void validate() const;
};

// One CSV row: a single trial, or an aggregate (trial = "mean"/"sd").
// Metric fields are empty for failed trials; the exception name goes in
// `error`.
struct ResultRow {
    std::string experiment;
    std::string detector;
    std::optional<double> noise_pct;  // b2 only
    std::optional<int> outliers;      // count (b1) or percent (b2)
    std::optional<int> q;             // b2 only
    std::string trial;
    std::optional<double> jaccard;
    std::optional<double> ad;
    std::optional<double> rmse;
    std::optional<double> elapsed;
    std::string error;
};

inline constexpr const char* kCsvHeader =
    "experiment,detector,noise_pct,outliers,q,trial,jaccard,ad,rmse,elapsed_s,error";

// Detector ids in canonical order; used for seed derivation and tie-breaks.
int detector_id(const std::string& name);  // throws Error on unknown name

// Per-(cell, trial) generation seed; detectors derive their own stream from it.
std::uint64_t trial_seed(std::uint64_t base_seed, int experiment_id,
                         const std::vector<std::int64_t>& cell, int trial);

// Runs the grid, trials fanned out over a worker pool; row order and content
// are independent of the worker count.
std::vector<ResultRow> run_sweep(const SweepConfig& cfg);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(std::istream& in);  // throws Error on bad shape

// Winner per grid cell by mean Jaccard across detectors, plus win counts.
// Cells where a detector has no successful trials never win; a detector
// missing a cell entirely raises MissingCell.
struct WinnerCell {
    std::optional<double> noise_pct;
    std::optional<int> outliers;
    std::optional<int> q;
    std::string winner;
    double jaccard = 0.0;
};
struct WinnerMatrix {
    std::vector<WinnerCell> cells;
    std::vector<std::pair<std::string, int>> win_counts;  // per detector
};
WinnerMatrix winner_matrix(const std::vector<ResultRow>& rows);

}  // namespace circlefit
