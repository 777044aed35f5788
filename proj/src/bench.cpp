#include "circlefit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "circlefit/detectors.hpp"
#include "circlefit/errors.hpp"
#include "circlefit/rng.hpp"
#include "circlefit/synth.hpp"

namespace circlefit {

namespace {

struct GridCell {
    std::optional<double> noise_pct;
    std::optional<int> outliers;
    std::optional<int> q;

    std::vector<std::int64_t> seed_coords() const {
        std::vector<std::int64_t> v;
        // noise_pct values on the canonical grid are whole percents; scale by
        // 1000 so fractional calibration values still hash distinctly
        v.push_back(noise_pct ? static_cast<std::int64_t>(std::llround(*noise_pct * 1000.0)) : -1);
        v.push_back(outliers ? *outliers : -1);
        v.push_back(q ? *q : -1);
        return v;
    }
};

struct TrialOutcome {
    std::optional<FitReport> report;
    std::string error;
};

std::string error_name(const Error& e) {
    if (dynamic_cast<const DegenerateTriplet*>(&e)) return "DegenerateTriplet";
    if (dynamic_cast<const EmptyAccumulator*>(&e)) return "EmptyAccumulator";
    if (dynamic_cast<const InsufficientPoints*>(&e)) return "InsufficientPoints";
    if (dynamic_cast<const NoAcceptedCandidate*>(&e)) return "NoAcceptedCandidate";
    if (dynamic_cast<const SingularSystem*>(&e)) return "SingularSystem";
    if (dynamic_cast<const SeparationInfeasible*>(&e)) return "SeparationInfeasible";
    return "Error";
}

Circle run_detector(int id, const PointSet& pts, const DetectorConfig& cfg) {
    switch (id) {
        case 0: return fbi_detect(pts, cfg).circle;
        case 1: return rht_detect(pts, cfg);
        case 2: return rcd_detect(pts, cfg);
        default: return lsq_fit(pts);
    }
}

}  // namespace

void SweepConfig::validate() const {
    if (trials < 1) throw Error("SweepConfig: trials >= 1 required");
    if (detectors.empty()) throw Error("SweepConfig: no detectors selected");
    for (const auto& d : detectors) detector_id(d);
    if (experiment == Experiment::b1 && b1_outliers.empty())
        throw Error("SweepConfig: empty b1 grid");
    if (experiment == Experiment::b2 && (b2_noise.empty() || b2_outliers.empty() || b2_q.empty()))
        throw Error("SweepConfig: empty b2 grid");
}

int detector_id(const std::string& name) {
    if (name == "fbi") return 0;
    if (name == "rht") return 1;
    if (name == "rcd") return 2;
    if (name == "lsq") return 3;
    throw Error("unknown detector: " + name + " (expected fbi, rht, rcd, or lsq)");
}

std::uint64_t trial_seed(std::uint64_t base_seed, int experiment_id,
                         const std::vector<std::int64_t>& cell, int trial) {
    std::uint64_t h = derive_seed(base_seed, {static_cast<std::uint64_t>(experiment_id)});
    for (std::int64_t c : cell) h = hash_combine(h, static_cast<std::uint64_t>(c));
    return hash_combine(h, static_cast<std::uint64_t>(trial));
}

std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const int experiment_id = cfg.experiment == SweepConfig::Experiment::b1 ? 1 : 2;

    std::vector<GridCell> cells;
    if (cfg.experiment == SweepConfig::Experiment::b1) {
        for (int out : cfg.b1_outliers) cells.push_back(GridCell{std::nullopt, out, std::nullopt});
    } else {
        for (int q : cfg.b2_q)
            for (double noise : cfg.b2_noise)
                for (int out : cfg.b2_outliers) cells.push_back(GridCell{noise, out, q});
    }

    // outcome slot per (cell, trial, detector); tasks run one (cell, trial)
    const std::size_t n_det = cfg.detectors.size();
    std::vector<int> det_ids(n_det);
    for (std::size_t d = 0; d < n_det; ++d) det_ids[d] = detector_id(cfg.detectors[d]);
    std::vector<TrialOutcome> slots(cells.size() * cfg.trials * n_det);

    auto run_task = [&](std::size_t task) {
        const std::size_t cell_idx = task / cfg.trials;
        const int trial = static_cast<int>(task % cfg.trials);
        const GridCell& cell = cells[cell_idx];
        const std::uint64_t gen_seed =
            trial_seed(cfg.base_seed, experiment_id, cell.seed_coords(), trial);

        PointSet pts;
        Circle truth;
        std::string gen_error;
        try {
            if (cfg.experiment == SweepConfig::Experiment::b1) {
                B1Spec spec;
                spec.n_outliers = *cell.outliers;
                spec.seed = gen_seed;
                LabeledDataset ds = gen_b1(spec);
                pts.points = std::move(ds.points);
                pts.unit = PointSet::Unit::mm;
                truth = ds.truth;
            } else {
                B2Spec spec;
                spec.noise_pct = *cell.noise_pct;
                spec.outlier_pct = *cell.outliers;
                spec.q = *cell.q;
                spec.seed = gen_seed;
                LabeledDataset ds = gen_b2(spec);
                pts.points = std::move(ds.points);
                pts.unit = PointSet::Unit::mm;
                truth = ds.effective_truth;
            }
        } catch (const Error& e) {
            gen_error = error_name(e);
        }

        for (std::size_t d = 0; d < n_det; ++d) {
            TrialOutcome& out = slots[(cell_idx * cfg.trials + trial) * n_det + d];
            if (!gen_error.empty()) {
                out.error = gen_error;
                continue;
            }
            DetectorConfig dcfg;
            dcfg.n_triplets = cfg.n_triplets;
            dcfg.bin_size = cfg.bin_size;
            dcfg.rng_seed = hash_combine(gen_seed, static_cast<std::uint64_t>(det_ids[d] + 1));
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const Circle fitted = run_detector(det_ids[d], pts, dcfg);
                const auto t1 = std::chrono::steady_clock::now();
                const double elapsed =
                    cfg.timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
                out.report = FitReport::score(fitted, truth, elapsed);
            } catch (const Error& e) {
                out.error = error_name(e);
            }
        }
    };

    const std::size_t n_tasks = cells.size() * cfg.trials;
    unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, n_tasks);
    if (workers <= 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < n_tasks; t = next.fetch_add(1))
                    run_task(t);
            });
        for (auto& th : pool) th.join();
    }

    // fixed emission order: cell, then detector, then trials + aggregates
    std::vector<ResultRow> rows;
    const std::string exp_name = cfg.experiment == SweepConfig::Experiment::b1 ? "b1" : "b2";
    for (std::size_t cell_idx = 0; cell_idx < cells.size(); ++cell_idx) {
        const GridCell& cell = cells[cell_idx];
        for (std::size_t d = 0; d < n_det; ++d) {
            std::vector<FitReport> successes;
            for (int trial = 0; trial < cfg.trials; ++trial) {
                const TrialOutcome& out = slots[(cell_idx * cfg.trials + trial) * n_det + d];
                ResultRow row;
                row.experiment = exp_name;
                row.detector = cfg.detectors[d];
                row.noise_pct = cell.noise_pct;
                row.outliers = cell.outliers;
                row.q = cell.q;
                row.trial = std::to_string(trial);
                if (out.report) {
                    row.jaccard = out.report->jaccard;
                    row.ad = out.report->ad;
                    row.rmse = out.report->rmse;
                    row.elapsed = out.report->elapsed;
                    successes.push_back(*out.report);
                } else {
                    row.error = out.error;
                }
                rows.push_back(std::move(row));
            }
            ResultRow mean_row, sd_row;
            mean_row.experiment = sd_row.experiment = exp_name;
            mean_row.detector = sd_row.detector = cfg.detectors[d];
            mean_row.noise_pct = sd_row.noise_pct = cell.noise_pct;
            mean_row.outliers = sd_row.outliers = cell.outliers;
            mean_row.q = sd_row.q = cell.q;
            mean_row.trial = "mean";
            sd_row.trial = "sd";
            if (!successes.empty()) {
                const Aggregate agg = aggregate(successes);
                mean_row.jaccard = agg.jaccard_mean;
                mean_row.ad = agg.ad_mean;
                mean_row.rmse = agg.rmse_mean;
                mean_row.elapsed = agg.elapsed_mean;
                sd_row.jaccard = agg.jaccard_sd;
                sd_row.ad = agg.ad_sd;
                sd_row.rmse = agg.rmse_sd;
                sd_row.elapsed = agg.elapsed_sd;
            } else {
                mean_row.error = sd_row.error = "NoSuccessfulTrials";
            }
            rows.push_back(std::move(mean_row));
            rows.push_back(std::move(sd_row));
        }
    }
    return rows;
}

namespace {

std::string fmt_opt(const std::optional<double>& v) {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
}

std::string fmt_noise(const std::optional<double>& v) {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", *v);
    return buf;
}

}  // namespace

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const ResultRow& r : rows) {
        out << r.experiment << ',' << r.detector << ',' << fmt_noise(r.noise_pct) << ','
            << (r.outliers ? std::to_string(*r.outliers) : "") << ','
            << (r.q ? std::to_string(*r.q) : "") << ',' << r.trial << ',' << fmt_opt(r.jaccard)
            << ',' << fmt_opt(r.ad) << ',' << fmt_opt(r.rmse) << ',' << fmt_opt(r.elapsed) << ','
            << r.error << "\n";
    }
}

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream ss;
    write_csv(rows, ss);
    return ss.str();
}

std::vector<ResultRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("empty results file");
    if (line != kCsvHeader) throw Error("unexpected results header: " + line);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                f.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        if (f.size() != 11) throw Error("bad results row: " + line);
        ResultRow r;
        r.experiment = f[0];
        r.detector = f[1];
        if (!f[2].empty()) r.noise_pct = std::stod(f[2]);
        if (!f[3].empty()) r.outliers = std::stoi(f[3]);
        if (!f[4].empty()) r.q = std::stoi(f[4]);
        r.trial = f[5];
        if (!f[6].empty()) r.jaccard = std::stod(f[6]);
        if (!f[7].empty()) r.ad = std::stod(f[7]);
        if (!f[8].empty()) r.rmse = std::stod(f[8]);
        if (!f[9].empty()) r.elapsed = std::stod(f[9]);
        r.error = f[10];
        rows.push_back(std::move(r));
    }
    return rows;
}

WinnerMatrix winner_matrix(const std::vector<ResultRow>& rows) {
    using CellKey = std::tuple<double, int, int>;  // noise, outliers, q (-1 when absent)
    auto key_of = [](const ResultRow& r) {
        return CellKey{r.noise_pct.value_or(-1.0), r.outliers.value_or(-1), r.q.value_or(-1)};
    };

    std::map<CellKey, std::map<std::string, std::optional<double>>> grid;
    std::set<std::string> detectors;
    for (const ResultRow& r : rows) {
        if (r.trial != "mean") continue;
        detectors.insert(r.detector);
        grid[key_of(r)][r.detector] = r.jaccard;
    }
    if (grid.empty()) throw Error("winner_matrix: no aggregate rows in input");

    for (const auto& [key, per_det] : grid)
        for (const std::string& det : detectors)
            if (!per_det.count(det)) {
                std::ostringstream ss;
                ss << "detector " << det << " missing at cell (noise=" << std::get<0>(key)
                   << ", outliers=" << std::get<1>(key) << ", q=" << std::get<2>(key) << ")";
                throw MissingCell(ss.str());
            }

    // canonical detector order decides ties
    std::vector<std::string> order;
    for (const char* name : {"fbi", "rht", "rcd", "lsq"})
        if (detectors.count(name)) order.push_back(name);
    for (const std::string& det : detectors)
        if (std::find(order.begin(), order.end(), det) == order.end()) order.push_back(det);

    WinnerMatrix wm;
    std::map<std::string, int> counts;
    for (const std::string& det : order) counts[det] = 0;
    for (const auto& [key, per_det] : grid) {
        const std::string* winner = nullptr;
        double best = -1.0;
        for (const std::string& det : order) {
            const auto& j = per_det.at(det);
            if (j && *j > best) {
                best = *j;
                winner = &det;
            }
        }
        if (!winner) continue;  // every detector failed the cell
        WinnerCell wc;
        if (std::get<0>(key) >= 0.0) wc.noise_pct = std::get<0>(key);
        if (std::get<1>(key) >= 0) wc.outliers = std::get<1>(key);
        if (std::get<2>(key) >= 0) wc.q = std::get<2>(key);
        wc.winner = *winner;
        wc.jaccard = best;
        wm.cells.push_back(std::move(wc));
        ++counts[*winner];
    }
    for (const std::string& det : order) wm.win_counts.emplace_back(det, counts[det]);
    return wm;
}

}  // namespace circlefit
