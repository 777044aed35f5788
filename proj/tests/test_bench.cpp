#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "circlefit/bench.hpp"
#include "circlefit/errors.hpp"
#include "circlefit/svg_report.hpp"

using namespace circlefit;
namespace fs = std::filesystem;

namespace {

SweepConfig tiny_b1() {
    SweepConfig cfg;
    cfg.experiment = SweepConfig::Experiment::b1;
    cfg.detectors = {"fbi", "lsq"};
    cfg.trials = 3;
    cfg.b1_outliers = {0, 2};
    cfg.n_triplets = 1000;
    cfg.workers = 1;
    return cfg;
}

ResultRow mean_row(const std::string& det, double noise, int out, int q, double j) {
    ResultRow r;
    r.experiment = "b2";
    r.detector = det;
    r.noise_pct = noise;
    r.outliers = out;
    r.q = q;
    r.trial = "mean";
    r.jaccard = j;
    r.ad = 1.0 - j;
    r.rmse = 1.0 - j;
    return r;
}

}  // namespace

TEST_CASE("the results header is stable") {
    CHECK(std::string(kCsvHeader) ==
          "experiment,detector,noise_pct,outliers,q,trial,jaccard,ad,rmse,elapsed_s,error");
}

TEST_CASE("detector names map to distinct ids") {
    std::set<int> ids{detector_id("fbi"), detector_id("rht"), detector_id("rcd"),
                      detector_id("lsq")};
    CHECK(ids.size() == 4);
    CHECK_THROWS_AS(detector_id("houghish"), Error);
}

TEST_CASE("a one-trial sweep emits trials then aggregates per cell and detector") {
    SweepConfig cfg = tiny_b1();
    cfg.trials = 1;
    cfg.b1_outliers = {3};
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 6);  // 1 cell x 2 detectors x (trial, mean, sd)

    CHECK(rows[0].experiment == "b1");
    CHECK(rows[0].detector == "fbi");
    CHECK(rows[0].trial == "0");
    CHECK(rows[1].trial == "mean");
    CHECK(rows[2].trial == "sd");
    CHECK(rows[3].detector == "lsq");
    CHECK(rows[3].trial == "0");

    for (const auto& r : rows) {
        CHECK_FALSE(r.noise_pct.has_value());
        CHECK_FALSE(r.q.has_value());
        REQUIRE(r.outliers.has_value());
        CHECK(*r.outliers == 3);
    }
    // a single-trial mean equals the trial, sd is zero
    REQUIRE(rows[0].jaccard.has_value());
    CHECK(*rows[1].jaccard == doctest::Approx(*rows[0].jaccard));
    CHECK(*rows[2].jaccard == 0.0);
}

TEST_CASE("aggregate rows recompute from their trials") {
    const auto rows = run_sweep(tiny_b1());
    // group trial rows under the following mean row
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].trial != "mean") continue;
        double sum = 0.0;
        int n = 0;
        for (std::size_t j = i; j-- > 0;) {
            const ResultRow& t = rows[j];
            if (t.trial == "mean" || t.trial == "sd") break;
            REQUIRE(t.jaccard.has_value());
            sum += *t.jaccard;
            ++n;
        }
        REQUIRE(n == 3);
        CHECK(*rows[i].jaccard == doctest::Approx(sum / n).epsilon(1e-12));
    }
}

TEST_CASE("identical configs give byte-identical output") {
    const std::string a = to_csv(run_sweep(tiny_b1()));
    const std::string b = to_csv(run_sweep(tiny_b1()));
    CHECK(a == b);
}

TEST_CASE("worker count does not change the output") {
    SweepConfig one = tiny_b1();
    SweepConfig four = tiny_b1();
    four.workers = 4;
    CHECK(to_csv(run_sweep(one)) == to_csv(run_sweep(four)));
}

TEST_CASE("elapsed stays zero unless timing is requested") {
    SweepConfig cfg = tiny_b1();
    cfg.trials = 1;
    cfg.b1_outliers = {0};
    for (const auto& r : run_sweep(cfg))
        if (r.elapsed) CHECK(*r.elapsed == 0.0);

    cfg.timing = true;
    bool any_positive = false;
    for (const auto& r : run_sweep(cfg))
        if (r.elapsed && *r.elapsed > 0.0) any_positive = true;
    CHECK(any_positive);
}

TEST_CASE("trial seeds never collide across the grid") {
    std::set<std::uint64_t> seen;
    int total = 0;
    for (int noise : {0, 1, 2, 5, 10})
        for (int out : {0, 10, 20, 30, 40, 50, 60, 70})
            for (int q : {0, 1, 2, 3, 6, 12, 24, 40})
                for (int trial = 0; trial < 10; ++trial) {
                    seen.insert(trial_seed(
                        42, 2, {static_cast<std::int64_t>(noise) * 1000, out, q}, trial));
                    ++total;
                }
    for (int out = 0; out <= 5; ++out)
        for (int trial = 0; trial < 10; ++trial) {
            seen.insert(trial_seed(42, 1, {-1, out, -1}, trial));
            ++total;
        }
    CHECK(static_cast<int>(seen.size()) == total);
}

TEST_CASE("detector failures land in the error column") {
    SweepConfig cfg;
    cfg.experiment = SweepConfig::Experiment::b2;
    cfg.detectors = {"rcd"};
    cfg.trials = 3;
    cfg.b2_noise = {10};
    cfg.b2_outliers = {70};
    cfg.b2_q = {0};
    cfg.workers = 1;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 5);
    for (int i = 0; i < 3; ++i) {
        CHECK(rows[i].error == "NoAcceptedCandidate");
        CHECK_FALSE(rows[i].jaccard.has_value());
    }
    CHECK(rows[3].trial == "mean");
    CHECK(rows[3].error == "NoSuccessfulTrials");
    CHECK(rows[4].error == "NoSuccessfulTrials");
    CHECK_FALSE(rows[3].jaccard.has_value());
}

TEST_CASE("rows survive a csv round trip") {
    const auto rows = run_sweep(tiny_b1());
    std::istringstream in(to_csv(rows));
    const auto parsed = parse_csv(in);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].experiment == rows[i].experiment);
        CHECK(parsed[i].detector == rows[i].detector);
        CHECK(parsed[i].trial == rows[i].trial);
        CHECK(parsed[i].outliers == rows[i].outliers);
        CHECK(parsed[i].noise_pct == rows[i].noise_pct);
        CHECK(parsed[i].q == rows[i].q);
        CHECK(parsed[i].error == rows[i].error);
        CHECK(parsed[i].jaccard.has_value() == rows[i].jaccard.has_value());
        if (rows[i].jaccard)
            CHECK(*parsed[i].jaccard == doctest::Approx(*rows[i].jaccard).epsilon(1e-6));
    }

    std::istringstream bad("not,the,header\n");
    CHECK_THROWS_AS(parse_csv(bad), Error);
}

TEST_CASE("sweep configuration is validated") {
    SweepConfig cfg = tiny_b1();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = tiny_b1();
    cfg.detectors = {"fbi", "nope"};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = tiny_b1();
    cfg.b1_outliers.clear();
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("the winner of each cell is the best mean Jaccard") {
    std::vector<ResultRow> rows{
        mean_row("fbi", 0, 0, 0, 0.90), mean_row("lsq", 0, 0, 0, 0.85),
        mean_row("fbi", 0, 10, 0, 0.80), mean_row("lsq", 0, 10, 0, 0.95),
    };
    const WinnerMatrix wm = winner_matrix(rows);
    REQUIRE(wm.cells.size() == 2);
    CHECK(wm.cells[0].winner == "fbi");
    CHECK(wm.cells[0].jaccard == doctest::Approx(0.90));
    CHECK(wm.cells[1].winner == "lsq");
    int fbi_wins = 0, lsq_wins = 0;
    for (const auto& [det, wins] : wm.win_counts) {
        if (det == "fbi") fbi_wins = wins;
        if (det == "lsq") lsq_wins = wins;
    }
    CHECK(fbi_wins == 1);
    CHECK(lsq_wins == 1);
}

TEST_CASE("ties go to the canonical detector order") {
    std::vector<ResultRow> rows{
        mean_row("lsq", 0, 0, 0, 0.90),
        mean_row("fbi", 0, 0, 0, 0.90),
    };
    const WinnerMatrix wm = winner_matrix(rows);
    REQUIRE(wm.cells.size() == 1);
    CHECK(wm.cells[0].winner == "fbi");
}

TEST_CASE("a detector with no successful trials cannot win") {
    ResultRow failed = mean_row("fbi", 0, 0, 0, 0.0);
    failed.jaccard.reset();
    failed.error = "NoSuccessfulTrials";
    std::vector<ResultRow> rows{failed, mean_row("lsq", 0, 0, 0, 0.2)};
    const WinnerMatrix wm = winner_matrix(rows);
    REQUIRE(wm.cells.size() == 1);
    CHECK(wm.cells[0].winner == "lsq");

    // both failing leaves the cell without a winner
    ResultRow failed2 = mean_row("lsq", 0, 0, 0, 0.0);
    failed2.jaccard.reset();
    failed2.error = "NoSuccessfulTrials";
    const WinnerMatrix none = winner_matrix({failed, failed2});
    CHECK(none.cells.empty());
}

TEST_CASE("a structurally absent cell is an error") {
    std::vector<ResultRow> rows{
        mean_row("fbi", 0, 0, 0, 0.9),
        mean_row("lsq", 0, 0, 0, 0.8),
        mean_row("fbi", 0, 10, 0, 0.9),  // lsq never ran this cell
    };
    CHECK_THROWS_AS(winner_matrix(rows), MissingCell);
}

TEST_CASE("heatmap colors follow the quality bands") {
    std::vector<ResultRow> rows{
        mean_row("fbi", 0, 0, 0, 0.97), mean_row("fbi", 0, 10, 0, 0.91),
        mean_row("fbi", 1, 0, 0, 0.85), mean_row("fbi", 1, 10, 0, 0.30),
    };
    const std::string svg = render_heatmap(rows, "jaccard", "test grid");
    CHECK(svg.find("#fffde7") != std::string::npos);  // >= 0.95
    CHECK(svg.find("#ffe082") != std::string::npos);  // >= 0.90
    CHECK(svg.find("#ff8a65") != std::string::npos);  // >= 0.80
    CHECK(svg.find("#5e35b1") != std::string::npos);  // < 0.50
    CHECK(svg.find("0.970") != std::string::npos);
    CHECK(svg.find("0.300") != std::string::npos);
    CHECK(svg.find("test grid") != std::string::npos);

    // deterministic output
    CHECK(svg == render_heatmap(rows, "jaccard", "test grid"));
}

TEST_CASE("error metrics use the reversed bands") {
    std::vector<ResultRow> rows{mean_row("fbi", 0, 0, 0, 0.0)};
    rows[0].ad = 0.4;  // small error = best band
    const std::string svg = render_heatmap(rows, "ad", "t");
    CHECK(svg.find("#fffde7") != std::string::npos);

    rows[0].ad = 8.0;  // large error = worst band
    const std::string worst = render_heatmap(rows, "ad", "t");
    CHECK(worst.find("#5e35b1") != std::string::npos);
}

TEST_CASE("single-cell and uniform grids render") {
    std::vector<ResultRow> one{mean_row("fbi", 0, 0, 0, 0.5)};
    const std::string svg = render_heatmap(one, "jaccard", "one");
    CHECK(svg.find("0.500") != std::string::npos);

    std::vector<ResultRow> uni{
        mean_row("fbi", 0, 0, 0, 0.99), mean_row("fbi", 0, 10, 0, 0.99),
        mean_row("fbi", 1, 0, 0, 0.99), mean_row("fbi", 1, 10, 0, 0.99),
    };
    const std::string usvg = render_heatmap(uni, "jaccard", "uniform");
    std::size_t count = 0;
    for (std::size_t pos = usvg.find("#fffde7"); pos != std::string::npos;
         pos = usvg.find("#fffde7", pos + 1))
        ++count;
    CHECK(count == 4);
    CHECK(usvg.find("#ffe082") == std::string::npos);
}

TEST_CASE("cells without an aggregate render as n/a") {
    ResultRow failed = mean_row("fbi", 0, 0, 0, 0.0);
    failed.jaccard.reset();
    const std::string svg = render_heatmap({failed}, "jaccard", "t");
    CHECK(svg.find(">n/a<") != std::string::npos);
}

TEST_CASE("a hole in the grid stops the renderer") {
    std::vector<ResultRow> rows{
        mean_row("fbi", 0, 0, 0, 0.9), mean_row("fbi", 0, 10, 0, 0.9),
        mean_row("fbi", 1, 0, 0, 0.9),  // (1, 10) missing
    };
    CHECK_THROWS_AS(render_heatmap(rows, "jaccard", "t"), IncompleteGrid);
    CHECK_THROWS_AS(render_heatmap({}, "jaccard", "t"), IncompleteGrid);
    CHECK_THROWS_AS(render_heatmap(rows, "volume", "t"), Error);
}

TEST_CASE("one svg file per resolution") {
    std::vector<ResultRow> rows{
        mean_row("fbi", 0, 0, 0, 0.9),
        mean_row("fbi", 0, 0, 6, 0.8),
        mean_row("fbi", 0, 0, 40, 0.2),
    };
    const fs::path dir = fs::temp_directory_path() / "circlefit_test_svg";
    fs::create_directories(dir);
    const auto written = emit_heatmap(rows, "jaccard", "fbi", dir.string());
    REQUIRE(written.size() == 3);
    CHECK(fs::exists(dir / "heatmap_fbi_jaccard_q0.svg"));
    CHECK(fs::exists(dir / "heatmap_fbi_jaccard_q6.svg"));
    CHECK(fs::exists(dir / "heatmap_fbi_jaccard_q40.svg"));
    CHECK_THROWS_AS(emit_heatmap(rows, "jaccard", "rht", dir.string()), IncompleteGrid);
    fs::remove_all(dir);
}

TEST_CASE("resolution labels name the collapsed grid") {
    CHECK(resolution_label(0) == "continuous");
    CHECK(resolution_label(1) == "480x480");
    CHECK(resolution_label(6) == "80x80");
    CHECK(resolution_label(24) == "20x20");
    CHECK(resolution_label(40) == "12x12");
    CHECK(resolution_label(7) == "q=7");
}
