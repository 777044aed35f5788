#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circlefit/detectors.hpp"
#include "circlefit/errors.hpp"
#include "circlefit/geometry.hpp"
#include "circlefit/image_io.hpp"
#include "circlefit/metrics.hpp"
#include "circlefit/synth.hpp"

namespace py = pybind11;
namespace cf = circlefit;

namespace {

using PointList = std::vector<std::pair<double, double>>;

cf::PointSet to_point_set(const PointList& pts) {
    cf::PointSet ps;
    ps.points.reserve(pts.size());
    for (const auto& [x, y] : pts) ps.points.push_back({x, y});
    return ps;
}

cf::DetectorConfig make_config(int n_triplets, double bin_size, std::uint64_t seed) {
    cf::DetectorConfig cfg;
    cfg.n_triplets = n_triplets;
    cfg.bin_size = bin_size;
    cfg.rng_seed = seed;
    return cfg;
}

py::dict dataset_to_dict(const cf::LabeledDataset& ds) {
    py::list points, labels;
    for (const auto& p : ds.points) points.append(py::make_tuple(p.x, p.y));
    for (const auto& l : ds.labels) labels.append(l == cf::PointLabel::inlier ? "in" : "out");
    py::dict d;
    d["points"] = points;
    d["labels"] = labels;
    d["truth"] = ds.truth;
    d["effective_truth"] = ds.effective_truth;
    d["q"] = ds.q;
    d["n_inliers"] = ds.n_inliers;
    d["n_outliers"] = ds.n_outliers;
    d["distinct_inlier_cells"] = ds.distinct_inlier_cells;
    d["distinct_outlier_cells"] = ds.distinct_outlier_cells;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "circle detection core";

    auto base = py::register_exception<cf::Error>(m, "Error");
    py::register_exception<cf::DegenerateTriplet>(m, "DegenerateTriplet", base);
    py::register_exception<cf::EmptyAccumulator>(m, "EmptyAccumulator", base);
    py::register_exception<cf::InsufficientPoints>(m, "InsufficientPoints", base);
    py::register_exception<cf::NoAcceptedCandidate>(m, "NoAcceptedCandidate", base);
    py::register_exception<cf::SingularSystem>(m, "SingularSystem", base);
    py::register_exception<cf::SeparationInfeasible>(m, "SeparationInfeasible", base);
    py::register_exception<cf::FileMissing>(m, "FileMissing", base);
    py::register_exception<cf::MalformedHeader>(m, "MalformedHeader", base);
    py::register_exception<cf::UnsupportedFormat>(m, "UnsupportedFormat", base);
    py::register_exception<cf::EmptyList>(m, "EmptyList", base);

    py::class_<cf::Circle>(m, "Circle")
        .def(py::init<>())
        .def(py::init([](double x, double y, double r) { return cf::Circle{x, y, r}; }),
             py::arg("x"), py::arg("y"), py::arg("r"))
        .def_readwrite("x", &cf::Circle::x)
        .def_readwrite("y", &cf::Circle::y)
        .def_readwrite("r", &cf::Circle::r)
        .def("__repr__", [](const cf::Circle& c) {
            return "Circle(x=" + std::to_string(c.x) + ", y=" + std::to_string(c.y) +
                   ", r=" + std::to_string(c.r) + ")";
        });

    m.def(
        "circle_from_three_points",
        [](std::pair<double, double> a, std::pair<double, double> b,
           std::pair<double, double> c) {
            return cf::circle_from_three_points({a.first, a.second}, {b.first, b.second},
                                                {c.first, c.second});
        },
        py::arg("p1"), py::arg("p2"), py::arg("p3"));

    m.def(
        "fbi_detect",
        [](const PointList& pts, int n_triplets, double bin_size, std::uint64_t seed) {
            return cf::fbi_detect(to_point_set(pts), make_config(n_triplets, bin_size, seed))
                .circle;
        },
        py::arg("points"), py::arg("n_triplets") = 5000, py::arg("bin_size") = 1.0,
        py::arg("seed") = 0);
    m.def(
        "rht_detect",
        [](const PointList& pts, int n_triplets, double bin_size, std::uint64_t seed) {
            return cf::rht_detect(to_point_set(pts), make_config(n_triplets, bin_size, seed));
        },
        py::arg("points"), py::arg("n_triplets") = 5000, py::arg("bin_size") = 1.0,
        py::arg("seed") = 0);
    m.def(
        "rcd_detect",
        [](const PointList& pts, int n_triplets, double bin_size, std::uint64_t seed) {
            return cf::rcd_detect(to_point_set(pts), make_config(n_triplets, bin_size, seed));
        },
        py::arg("points"), py::arg("n_triplets") = 5000, py::arg("bin_size") = 1.0,
        py::arg("seed") = 0);
    m.def(
        "lsq_fit", [](const PointList& pts) { return cf::lsq_fit(to_point_set(pts)); },
        py::arg("points"));

    m.def("jaccard", &cf::jaccard, py::arg("a"), py::arg("b"));
    m.def("avg_distance", &cf::avg_distance, py::arg("a"), py::arg("b"));
    m.def("rmse", &cf::rmse, py::arg("a"), py::arg("b"));

    m.def(
        "gen_b1",
        [](int n_outliers, std::uint64_t seed, double sigma) {
            cf::B1Spec spec;
            spec.n_outliers = n_outliers;
            spec.seed = seed;
            spec.sigma = sigma;
            return dataset_to_dict(cf::gen_b1(spec));
        },
        py::arg("n_outliers") = 0, py::arg("seed") = 0, py::arg("sigma") = 1.0);
    m.def(
        "gen_b2",
        [](double noise_pct, int outlier_pct, int q, std::uint64_t seed) {
            cf::B2Spec spec;
            spec.noise_pct = noise_pct;
            spec.outlier_pct = outlier_pct;
            spec.q = q;
            spec.seed = seed;
            return dataset_to_dict(cf::gen_b2(spec));
        },
        py::arg("noise_pct") = 0.0, py::arg("outlier_pct") = 0, py::arg("q") = 0,
        py::arg("seed") = 0);

    m.def(
        "load_edge_image",
        [](const std::string& path, int threshold) {
            const cf::EdgeImage img = cf::load_edge_image(path, threshold);
            py::list pts;
            for (const auto& p : cf::edgels(img)) pts.append(py::make_tuple(p.x, p.y));
            py::dict d;
            d["width"] = img.width;
            d["height"] = img.height;
            d["edgels"] = pts;
            return d;
        },
        py::arg("path"), py::arg("threshold") = 128);

    m.def("triplet_count", &cf::triplet_count, py::arg("n_edgels"));
}
