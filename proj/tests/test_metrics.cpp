#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "circlefit/metrics.hpp"

using namespace circlefit;
constexpr double pi = std::numbers::pi;

TEST_CASE("jaccard of identical circles is one") {
    const Circle c{12, -7, 30};
    CHECK(jaccard(c, c) == doctest::Approx(1.0));
}

TEST_CASE("jaccard of disjoint circles is zero") {
    CHECK(jaccard({0, 0, 1}, {10, 0, 1}) == 0.0);
    CHECK(jaccard({0, 0, 1}, {2, 0, 1}) == 0.0);  // external tangency
}

TEST_CASE("jaccard of concentric circles is the area ratio") {
    // intersection pi r^2, union pi (2r)^2
    CHECK(jaccard({0, 0, 1}, {0, 0, 2}) == doctest::Approx(0.25));
    CHECK(jaccard({0, 0, 2}, {0, 0, 1}) == doctest::Approx(0.25));
}

TEST_CASE("jaccard of unit circles one apart") {
    const double lens = 2.0 * pi / 3.0 - std::sqrt(3.0) / 2.0;
    const double expected = lens / (2.0 * pi - lens);
    CHECK(jaccard({0, 0, 1}, {1, 0, 1}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.24300992).epsilon(1e-6));
}

TEST_CASE("jaccard is symmetric") {
    const Circle a{3, 4, 5};
    const Circle b{5, 3, 4};
    CHECK(jaccard(a, b) == doctest::Approx(jaccard(b, a)).epsilon(1e-15));
}

TEST_CASE("average parameter distance") {
    CHECK(avg_distance({3, 0, 5}, {0, 0, 5}) == doctest::Approx(1.0));
    CHECK(avg_distance({1, 2, 8}, {0, 0, 5}) == doctest::Approx(2.0));
    CHECK(avg_distance({0, -2, 5}, {1, 0, 2}) == doctest::Approx(2.0));  // signs dropped
}

TEST_CASE("rmse of parameter deltas") {
    CHECK(rmse({3, 0, 5}, {0, 0, 5}) == doctest::Approx(std::sqrt(3.0)));
    CHECK(rmse({1, 2, 7}, {0, 0, 5}) == doctest::Approx(std::sqrt(3.0)));
    CHECK(rmse({5, 5, 5}, {5, 5, 5}) == doctest::Approx(0.0).epsilon(1e-12).scale(1));
}

TEST_CASE("score fills every metric against the truth") {
    const FitReport rep = FitReport::score({1, 0, 1}, {0, 0, 1}, 0.25);
    CHECK(rep.jaccard == doctest::Approx(jaccard({1, 0, 1}, {0, 0, 1})));
    CHECK(rep.ad == doctest::Approx(1.0 / 3.0));
    CHECK(rep.rmse == doctest::Approx(std::sqrt(1.0 / 3.0)));
    CHECK(rep.elapsed == 0.25);
}

TEST_CASE("aggregate of a single report has zero spread") {
    std::vector<FitReport> reps{FitReport::score({1, 0, 1}, {0, 0, 1}, 0.5)};
    const Aggregate a = aggregate(reps);
    CHECK(a.count == 1);
    CHECK(a.jaccard_mean == doctest::Approx(reps[0].jaccard));
    CHECK(a.jaccard_sd == 0.0);
    CHECK(a.elapsed_mean == doctest::Approx(0.5));
}

TEST_CASE("aggregate uses the sample standard deviation") {
    FitReport a, b;
    a.jaccard = 0.8;
    b.jaccard = 0.6;
    a.ad = 1.0;
    b.ad = 3.0;
    const Aggregate agg = aggregate({a, b});
    CHECK(agg.count == 2);
    CHECK(agg.jaccard_mean == doctest::Approx(0.7));
    // sample sd with n-1 = 1: sqrt(0.01 + 0.01)
    CHECK(agg.jaccard_sd == doctest::Approx(std::sqrt(0.02)));
    CHECK(agg.ad_mean == doctest::Approx(2.0));
    CHECK(agg.ad_sd == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("aggregate of nothing is an error") {
    CHECK_THROWS_AS(aggregate({}), EmptyList);
}
