#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "circlefit/bench.hpp"
#include "circlefit/detectors.hpp"
#include "circlefit/errors.hpp"
#include "circlefit/image_io.hpp"
#include "circlefit/svg_report.hpp"
#include "circlefit/synth.hpp"

namespace cf = circlefit;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == ',') {
            if (i > start) out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& s, const char* what) {
    std::vector<T> out;
    for (const std::string& tok : split_list(s)) {
        try {
            if constexpr (std::is_integral_v<T>)
                out.push_back(static_cast<T>(std::stoll(tok)));
            else
                out.push_back(static_cast<T>(std::stod(tok)));
        } catch (const std::exception&) {
            throw cf::Error(std::string("bad ") + what + " value: " + tok);
        }
    }
    if (out.empty()) throw cf::Error(std::string("empty ") + what + " list");
    return out;
}

// `x,y[,label]` rows; header line optional
cf::PointSet load_point_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw cf::FileMissing(path);
    cf::PointSet ps;
    ps.unit = cf::PointSet::Unit::mm;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string xs, ys;
        if (!std::getline(ss, xs, ',') || !std::getline(ss, ys, ',')) {
            if (first) { first = false; continue; }
            throw cf::MalformedHeader("bad point row: " + line);
        }
        try {
            const double x = std::stod(xs), y = std::stod(ys);
            ps.points.push_back({x, y});
        } catch (const std::exception&) {
            if (first) { first = false; continue; }  // header row
            throw cf::MalformedHeader("bad point row: " + line);
        }
        first = false;
    }
    return ps;
}

void write_results(const std::vector<cf::ResultRow>& rows, const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw cf::Error("cannot write " + path.string());
    cf::write_csv(rows, f);
}

void write_winners(const cf::WinnerMatrix& wm, const fs::path& dir) {
    {
        std::ofstream f(dir / "winners.csv", std::ios::binary);
        if (!f) throw cf::Error("cannot write winners.csv");
        f << "noise_pct,outliers,q,winner,jaccard\n";
        char buf[40];
        for (const auto& c : wm.cells) {
            if (c.noise_pct) {
                std::snprintf(buf, sizeof buf, "%g", *c.noise_pct);
                f << buf;
            }
            f << ',';
            if (c.outliers) f << *c.outliers;
            f << ',';
            if (c.q) f << *c.q;
            std::snprintf(buf, sizeof buf, "%.6f", c.jaccard);
            f << ',' << c.winner << ',' << buf << "\n";
        }
    }
    {
        std::ofstream f(dir / "win_counts.csv", std::ios::binary);
        if (!f) throw cf::Error("cannot write win_counts.csv");
        f << "detector,wins\n";
        for (const auto& [det, wins] : wm.win_counts) f << det << ',' << wins << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"circle detection toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset (CSV + JSON sidecar)");
    std::string gen_experiment = "b1";
    std::uint64_t gen_seed = 42;
    int gen_outliers = 0;
    double gen_noise = 0.0;
    int gen_q = 0;
    std::string gen_out = "dataset.csv";
    gen->add_option("--experiment", gen_experiment, "b1 or b2")
        ->check(CLI::IsMember({"b1", "b2"}));
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--outliers", gen_outliers, "b1: outlier count (0..5); b2: outlier percent");
    gen->add_option("--noise", gen_noise, "b2 only: radial noise as percent of the radius");
    gen->add_option("--q", gen_q, "b2 only: quantization step in mm (0 = off)");
    gen->add_option("--out", gen_out, "output CSV path");

    // detect
    auto* detect = app.add_subcommand("detect", "fit a circle to an edge image or point CSV");
    std::string detect_input;
    std::string detect_detector = "fbi";
    int detect_threshold = 128;
    int detect_triplets = 5000;
    double detect_bin = 1.0;
    std::uint64_t detect_seed = 42;
    detect->add_option("input", detect_input, "path to .pbm/.pgm image or x,y CSV")->required();
    detect->add_option("--detector", detect_detector, "fbi, rht, rcd, or lsq");
    detect->add_option("--threshold", detect_threshold, "PGM binarization threshold (edgel < t)");
    detect->add_option("--n-triplets", detect_triplets, "triplet budget");
    detect->add_option("--bin-size", detect_bin, "accumulator bin size");
    detect->add_option("--seed", detect_seed, "sampling seed");

    // shared bench options
    struct BenchArgs {
        std::string detectors = "fbi";
        int trials = 100;
        std::uint64_t seed = 42;
        std::string out_dir = ".";
        int n_triplets = 5000;
        double bin_size = 1.0;
        int workers = 0;
        bool timing = false;
    };
    auto add_bench_options = [](CLI::App* cmd, BenchArgs& a) {
        cmd->add_option("--detectors", a.detectors, "comma list of fbi,rht,rcd,lsq");
        cmd->add_option("--trials", a.trials, "trials per grid cell");
        cmd->add_option("--seed", a.seed, "master seed");
        cmd->add_option("--out-dir", a.out_dir, "directory for the results CSV");
        cmd->add_option("--n-triplets", a.n_triplets, "triplet budget per trial");
        cmd->add_option("--bin-size", a.bin_size, "accumulator bin size");
        cmd->add_option("--workers", a.workers, "worker threads (0 = hardware)");
        cmd->add_flag("--timing", a.timing, "record wall time (output no longer byte-stable)");
    };

    auto* b1 = app.add_subcommand("bench-b1", "outlier sweep on the 50-point arc benchmark");
    BenchArgs b1_args;
    add_bench_options(b1, b1_args);
    std::string b1_outliers = "0,1,2,3,4,5";
    b1->add_option("--outlier-list", b1_outliers, "comma list of outlier counts");

    auto* b2 = app.add_subcommand("bench-b2", "noise/outlier/quantization sweep");
    BenchArgs b2_args;
    add_bench_options(b2, b2_args);
    std::string b2_noise = "0,1,2,5,10";
    std::string b2_outliers = "0,10,20,30,40,50,60,70";
    std::string b2_q = "0,1,2,3,6,12,24,40";
    b2->add_option("--noise-list", b2_noise, "comma list of noise percents");
    b2->add_option("--outlier-list", b2_outliers, "comma list of outlier percents");
    b2->add_option("--q-list", b2_q, "comma list of quantization steps");

    // report
    auto* report = app.add_subcommand("report", "render heatmaps and winner tables from a results CSV");
    std::string report_input;
    std::string report_metric = "jaccard";
    std::string report_out_dir = ".";
    report->add_option("input", report_input, "results CSV from bench-b1/bench-b2")->required();
    report->add_option("--metric", report_metric, "jaccard, ad, or rmse")
        ->check(CLI::IsMember({"jaccard", "ad", "rmse"}));
    report->add_option("--out-dir", report_out_dir, "directory for SVG/CSV outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (gen->parsed()) {
        cf::LabeledDataset ds;
        std::string sidecar;
        if (gen_experiment == "b1") {
            cf::B1Spec spec;
            spec.n_outliers = gen_outliers;
            spec.seed = gen_seed;
            ds = cf::gen_b1(spec);
            sidecar = cf::describe(spec);
        } else {
            cf::B2Spec spec;
            spec.noise_pct = gen_noise;
            spec.outlier_pct = gen_outliers;
            spec.q = gen_q;
            spec.seed = gen_seed;
            ds = cf::gen_b2(spec);
            sidecar = cf::describe(spec);
        }
        cf::write_dataset(ds, gen_out, sidecar);
        std::cout << gen_out << ": " << ds.points.size() << " points (" << ds.n_inliers
                  << " inliers, " << ds.n_outliers << " outliers)\n";
        return 0;
    }

    if (detect->parsed()) {
        cf::PointSet pts;
        const fs::path in(detect_input);
        const std::string ext = in.extension().string();
        if (ext == ".pbm" || ext == ".pgm") {
            const cf::EdgeImage img = cf::load_edge_image(detect_input, detect_threshold);
            pts.points = cf::edgels(img);
            pts.unit = cf::PointSet::Unit::px;
        } else {
            pts = load_point_csv(detect_input);
        }
        cf::DetectorConfig cfg;
        cfg.n_triplets = detect_triplets;
        cfg.bin_size = detect_bin;
        cfg.rng_seed = detect_seed;
        cf::Circle c;
        const int id = cf::detector_id(detect_detector);
        switch (id) {
            case 0: c = cf::fbi_detect(pts, cfg).circle; break;
            case 1: c = cf::rht_detect(pts, cfg); break;
            case 2: c = cf::rcd_detect(pts, cfg); break;
            default: c = cf::lsq_fit(pts); break;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "detector=%s x=%.6f y=%.6f r=%.6f n_points=%zu\n",
                      detect_detector.c_str(), c.x, c.y, c.r, pts.points.size());
        std::cout << buf;
        return 0;
    }

    if (b1->parsed() || b2->parsed()) {
        const bool is_b1 = b1->parsed();
        const BenchArgs& a = is_b1 ? b1_args : b2_args;
        cf::SweepConfig cfg;
        cfg.experiment =
            is_b1 ? cf::SweepConfig::Experiment::b1 : cf::SweepConfig::Experiment::b2;
        cfg.detectors = split_list(a.detectors);
        cfg.trials = a.trials;
        cfg.base_seed = a.seed;
        cfg.n_triplets = a.n_triplets;
        cfg.bin_size = a.bin_size;
        cfg.workers = a.workers;
        cfg.timing = a.timing;
        if (is_b1) {
            cfg.b1_outliers = parse_numbers<int>(b1_outliers, "outlier");
        } else {
            cfg.b2_noise = parse_numbers<double>(b2_noise, "noise");
            cfg.b2_outliers = parse_numbers<int>(b2_outliers, "outlier");
            cfg.b2_q = parse_numbers<int>(b2_q, "q");
        }
        const std::vector<cf::ResultRow> rows = cf::run_sweep(cfg);
        fs::create_directories(a.out_dir);
        const fs::path out = fs::path(a.out_dir) / (is_b1 ? "b1_results.csv" : "b2_results.csv");
        write_results(rows, out);
        std::cout << out.string() << ": " << rows.size() << " rows\n";
        return 0;
    }

    if (report->parsed()) {
        std::ifstream f(report_input);
        if (!f) throw cf::FileMissing(report_input);
        const std::vector<cf::ResultRow> rows = cf::parse_csv(f);
        fs::create_directories(report_out_dir);

        std::vector<std::string> detectors;
        for (const cf::ResultRow& r : rows)
            if (r.trial == "mean" &&
                std::find(detectors.begin(), detectors.end(), r.detector) == detectors.end())
                detectors.push_back(r.detector);
        std::vector<std::string> written;
        for (const std::string& det : detectors) {
            auto paths = cf::emit_heatmap(rows, report_metric, det, report_out_dir);
            written.insert(written.end(), paths.begin(), paths.end());
        }
        const cf::WinnerMatrix wm = cf::winner_matrix(rows);
        write_winners(wm, report_out_dir);
        std::cout << report_out_dir << ": " << written.size()
                  << " heatmaps, winners.csv, win_counts.csv\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
