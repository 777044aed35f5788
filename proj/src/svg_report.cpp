#include "circlefit/svg_report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "circlefit/errors.hpp"

namespace circlefit {

namespace {

// Jaccard quality bands, best to worst; ad/rmse reuse the palette with
// error thresholds instead.
constexpr const char* kPalette[5] = {"#fffde7", "#ffe082", "#ff8a65", "#d32f2f", "#5e35b1"};

int band_index(const std::string& metric, double v) {
    if (metric == "jaccard") {
        if (v >= 0.95) return 0;
        if (v >= 0.90) return 1;
        if (v >= 0.80) return 2;
        if (v >= 0.50) return 3;
        return 4;
    }
    if (v <= 0.5) return 0;
    if (v <= 1.0) return 1;
    if (v <= 2.0) return 2;
    if (v <= 6.0) return 3;
    return 4;
}

// dark fills need light text
const char* text_color(int band) { return band >= 3 ? "#ffffff" : "#212121"; }

std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void require_known_metric(const std::string& metric) {
    if (metric != "jaccard" && metric != "ad" && metric != "rmse")
        throw Error("unknown metric: " + metric + " (expected jaccard, ad, or rmse)");
}

std::optional<double> metric_of(const ResultRow& r, const std::string& metric) {
    if (metric == "jaccard") return r.jaccard;
    if (metric == "ad") return r.ad;
    return r.rmse;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

}  // namespace

std::string resolution_label(int q) {
    if (q == 0) return "continuous";
    if (480 % q == 0) {
        const int px = 480 / q;
        return std::to_string(px) + "x" + std::to_string(px);
    }
    return "q=" + std::to_string(q);
}

std::string render_heatmap(const std::vector<ResultRow>& mean_rows, const std::string& metric,
                           const std::string& title) {
    require_known_metric(metric);

    std::set<double> noise_axis;
    std::set<int> out_axis;
    std::map<std::pair<double, int>, const ResultRow*> at;
    for (const ResultRow& r : mean_rows) {
        if (r.trial != "mean") continue;
        const double noise = r.noise_pct.value_or(-1.0);
        const int out = r.outliers.value_or(-1);
        noise_axis.insert(noise);
        out_axis.insert(out);
        at[{noise, out}] = &r;
    }
    if (at.empty()) throw IncompleteGrid("no aggregate rows to plot");
    for (double noise : noise_axis)
        for (int out : out_axis)
            if (!at.count({noise, out})) {
                std::ostringstream ss;
                ss << "missing cell (noise=" << noise << ", outliers=" << out << ")";
                throw IncompleteGrid(ss.str());
            }

    const int cell_w = 72, cell_h = 40;
    const int left = 96, top = 72, right = 16, bottom = 28;
    const int ncols = static_cast<int>(out_axis.size());
    const int nrows = static_cast<int>(noise_axis.size());
    const int width = left + ncols * cell_w + right;
    const int height = top + nrows * cell_h + bottom;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#fafafa\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"24\" font-family=\"monospace\" font-size=\"15\" "
        << "fill=\"#212121\">" << xml_escape(title) << "</text>\n";

    // column headers: outlier levels
    int col = 0;
    for (int out : out_axis) {
        const int cx = left + col * cell_w + cell_w / 2;
        svg << "<text x=\"" << cx << "\" y=\"" << top - 10
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
            << "fill=\"#424242\">";
        if (out < 0)
            svg << "-";
        else
            svg << out;
        svg << "</text>\n";
        ++col;
    }
    svg << "<text x=\"" << left + ncols * cell_w / 2 << "\" y=\"" << top - 34
        << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
        << "fill=\"#424242\">outliers</text>\n";

    // row headers: noise levels
    int rrow = 0;
    for (double noise : noise_axis) {
        const int cy = top + rrow * cell_h + cell_h / 2 + 4;
        svg << "<text x=\"" << left - 10 << "\" y=\"" << cy
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\" "
            << "fill=\"#424242\">";
        if (noise < 0.0)
            svg << "-";
        else
            svg << fmt("%g", noise) << "%";
        svg << "</text>\n";
        ++rrow;
    }

    rrow = 0;
    for (double noise : noise_axis) {
        col = 0;
        for (int out : out_axis) {
            const ResultRow& r = *at.at({noise, out});
            const std::optional<double> v = metric_of(r, metric);
            const int x = left + col * cell_w;
            const int y = top + rrow * cell_h;
            if (v) {
                const int band = band_index(metric, *v);
                svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
                    << "\" height=\"" << cell_h << "\" fill=\"" << kPalette[band]
                    << "\" stroke=\"#9e9e9e\"/>\n";
                svg << "<text x=\"" << x + cell_w / 2 << "\" y=\"" << y + cell_h / 2 + 4
                    << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
                    << "fill=\"" << text_color(band) << "\">" << fmt("%.3f", *v) << "</text>\n";
            } else {
                svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
                    << "\" height=\"" << cell_h
                    << "\" fill=\"#bdbdbd\" stroke=\"#9e9e9e\"/>\n";
                svg << "<text x=\"" << x + cell_w / 2 << "\" y=\"" << y + cell_h / 2 + 4
                    << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
                    << "fill=\"#212121\">n/a</text>\n";
            }
            ++col;
        }
        ++rrow;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::string> emit_heatmap(const std::vector<ResultRow>& rows,
                                      const std::string& metric, const std::string& detector,
                                      const std::string& out_dir) {
    std::map<int, std::vector<ResultRow>> by_q;  // -1 when the sweep has no quantum axis
    for (const ResultRow& r : rows) {
        if (r.detector != detector || r.trial != "mean") continue;
        by_q[r.q.value_or(-1)].push_back(r);
    }
    if (by_q.empty()) throw IncompleteGrid("no aggregate rows for detector " + detector);

    std::vector<std::string> written;
    for (const auto& [q, group] : by_q) {
        std::string title = detector + " " + metric;
        std::string name = "heatmap_" + detector + "_" + metric;
        if (q >= 0) {
            title += " at " + resolution_label(q);
            name += "_q" + std::to_string(q);
        }
        name += ".svg";
        const std::string svg = render_heatmap(group, metric, title);
        const std::string path = out_dir.empty() ? name : out_dir + "/" + name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path);
        f << svg;
        written.push_back(path);
    }
    return written;
}

}  // namespace circlefit
