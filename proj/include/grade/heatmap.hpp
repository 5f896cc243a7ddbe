#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grade/error.hpp"
#include "grade/harness.hpp"

namespace grade {

enum class Axis { SpaceSize, NumTargets, Lambda, Mu, Profile };

inline constexpr Axis kAllAxes[] = {Axis::Profile, Axis::SpaceSize, Axis::NumTargets, Axis::Lambda, Axis::Mu};

inline std::string_view axis_name(Axis a) {
    switch (a) {
        case Axis::SpaceSize: return "N";
        case Axis::NumTargets: return "M";
        case Axis::Lambda: return "lambda";
        case Axis::Mu: return "mu";
        case Axis::Profile: return "profile";
    }
    return "?";
}

inline Axis parse_axis(std::string_view s) {
    if (s == "N" || s == "space_size") return Axis::SpaceSize;
    if (s == "M" || s == "num_targets") return Axis::NumTargets;
    if (s == "lambda") return Axis::Lambda;
    if (s == "mu") return Axis::Mu;
    if (s == "profile") return Axis::Profile;
    throw ValidationError("unknown heatmap axis '" + std::string(s) + "' (use N, M, lambda, mu or profile)");
}

inline std::string axis_label(const CellAggregate& c, Axis a) {
    switch (a) {
        case Axis::SpaceSize: return std::to_string(c.space_size);
        case Axis::NumTargets: return std::to_string(c.num_targets);
        case Axis::Lambda: return detail::format_weight(c.lambda);
        case Axis::Mu: return detail::format_weight(c.mu);
        case Axis::Profile: return c.profile;
    }
    return {};
}

/// Mean-score matrix over two grid dimensions.
struct Heatmap {
    Axis rows = Axis::Mu;
    Axis cols = Axis::SpaceSize;
    std::string title;  // fixed values of the remaining dimensions
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> values;  // [row][col]
};

namespace detail {

inline std::string group_key(const CellAggregate& c, Axis rows, Axis cols) {
    std::string key;
    for (Axis a : kAllAxes) {
        if (a == rows || a == cols) continue;
        if (!key.empty()) key += ", ";
        key += std::string(axis_name(a)) + "=" + axis_label(c, a);
    }
    return key;
}

inline void push_unique(std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace detail

/// Builds one heatmap from cells that agree on every dimension except `rows`
/// and `cols`. Skipped cells count as absent; any absent grid position is an error.
inline Heatmap build_heatmap(std::span<const CellAggregate> cells, Axis rows, Axis cols) {
    if (rows == cols) throw ValidationError("heatmap rows and columns must use different axes");
    Heatmap h{rows, cols, {}, {}, {}, {}};
    std::map<std::pair<std::string, std::string>, double> grid;
    bool first = true;
    for (const CellAggregate& c : cells) {
        const std::string key = detail::group_key(c, rows, cols);
        if (first) {
            h.title = key;
            first = false;
        } else if (key != h.title) {
            throw ValidationError("cells differ outside the heatmap axes ('" + h.title + "' vs '" + key + "')");
        }
        const std::string r = axis_label(c, rows);
        const std::string col = axis_label(c, cols);
        detail::push_unique(h.row_labels, r);
        detail::push_unique(h.col_labels, col);
        if (c.skipped) continue;
        if (!grid.emplace(std::pair{r, col}, c.mean).second) {
            throw ValidationError("duplicate heatmap cell (" + std::string(axis_name(rows)) + "=" + r + ", " +
                                  std::string(axis_name(cols)) + "=" + col + ")");
        }
    }
    if (first) throw ValidationError("heatmap needs at least one cell");

    std::vector<std::string> missing;
    h.values.assign(h.row_labels.size(), std::vector<double>(h.col_labels.size(), 0.0));
    for (std::size_t i = 0; i < h.row_labels.size(); ++i) {
        for (std::size_t j = 0; j < h.col_labels.size(); ++j) {
            auto it = grid.find({h.row_labels[i], h.col_labels[j]});
            if (it == grid.end()) {
                missing.push_back("(" + std::string(axis_name(rows)) + "=" + h.row_labels[i] + ", " +
                                  std::string(axis_name(cols)) + "=" + h.col_labels[j] + ")");
            } else {
                h.values[i][j] = it->second;
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "ragged heatmap grid, missing cells:";
        for (const auto& m : missing) msg += " " + m;
        throw ValidationError(msg);
    }
    return h;
}

/// Splits cells by the dimensions not on the axes and builds one heatmap per group.
inline std::vector<Heatmap> build_heatmaps(std::span<const CellAggregate> cells, Axis rows, Axis cols) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<CellAggregate>> groups;
    for (const CellAggregate& c : cells) {
        const std::string key = detail::group_key(c, rows, cols);
        detail::push_unique(order, key);
        groups[key].push_back(c);
    }
    std::vector<Heatmap> out;
    for (const auto& key : order) out.push_back(build_heatmap(groups[key], rows, cols));
    return out;
}

inline std::string render_heatmap_csv(const Heatmap& h) {
    std::string out = std::string(axis_name(h.rows)) + "\\" + std::string(axis_name(h.cols));
    for (const auto& c : h.col_labels) out += "," + c;
    out += "\n";
    for (std::size_t i = 0; i < h.row_labels.size(); ++i) {
        out += h.row_labels[i];
        for (double v : h.values[i]) out += "," + detail::format_double(v);
        out += "\n";
    }
    return out;
}

namespace detail {

// Red (0) through yellow to green (1).
inline std::string score_color(double v) {
    v = std::clamp(v, 0.0, 1.0);
    int r, g;
    if (v < 0.5) {
        r = 215;
        g = static_cast<int>(std::lround(48 + (v / 0.5) * (207 - 48)));
    } else {
        r = static_cast<int>(std::lround(215 - ((v - 0.5) / 0.5) * (215 - 26)));
        g = static_cast<int>(std::lround(207 - ((v - 0.5) / 0.5) * (207 - 150)));
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, 60);
    return buf;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Static SVG: one colored cell per value with a two-decimal annotation and a 0-1 color bar.
inline std::string render_heatmap_svg(const Heatmap& h) {
    constexpr int cell = 64;
    constexpr int left = 90;
    constexpr int top = 60;
    const int width = left + cell * static_cast<int>(h.col_labels.size()) + 110;
    const int height = top + cell * static_cast<int>(h.row_labels.size()) + 60;
    auto num = [](double v) { return detail::format_double(v, "%.2f"); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + std::to_string(left) + "\" y=\"24\" font-size=\"14\">GRADE score" +
         (h.title.empty() ? std::string() : " (" + detail::xml_escape(h.title) + ")") + "</text>\n";
    s += "<text x=\"" + std::to_string(left + cell * static_cast<int>(h.col_labels.size()) / 2) + "\" y=\"" +
         std::to_string(top - 22) + "\" text-anchor=\"middle\">" + std::string(axis_name(h.cols)) + "</text>\n";
    s += "<text x=\"16\" y=\"" + std::to_string(top + cell * static_cast<int>(h.row_labels.size()) / 2) +
         "\" text-anchor=\"middle\">" + std::string(axis_name(h.rows)) + "</text>\n";

    for (std::size_t j = 0; j < h.col_labels.size(); ++j) {
        s += "<text x=\"" + std::to_string(left + cell * static_cast<int>(j) + cell / 2) + "\" y=\"" +
             std::to_string(top - 6) + "\" text-anchor=\"middle\">" + detail::xml_escape(h.col_labels[j]) +
             "</text>\n";
    }
    for (std::size_t i = 0; i < h.row_labels.size(); ++i) {
        const int y = top + cell * static_cast<int>(i);
        s += "<text x=\"" + std::to_string(left - 8) + "\" y=\"" + std::to_string(y + cell / 2 + 4) +
             "\" text-anchor=\"end\">" + detail::xml_escape(h.row_labels[i]) + "</text>\n";
        for (std::size_t j = 0; j < h.col_labels.size(); ++j) {
            const int x = left + cell * static_cast<int>(j);
            const double v = h.values[i][j];
            s += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
                 std::to_string(cell) + "\" height=\"" + std::to_string(cell) + "\" fill=\"" +
                 detail::score_color(v) + "\" stroke=\"white\"/>\n";
            s += "<text x=\"" + std::to_string(x + cell / 2) + "\" y=\"" + std::to_string(y + cell / 2 + 4) +
                 "\" text-anchor=\"middle\">" + num(v) + "</text>\n";
        }
    }

    const int bar_x = left + cell * static_cast<int>(h.col_labels.size()) + 30;
    const int bar_h = std::max(cell * static_cast<int>(h.row_labels.size()), 100);
    constexpr int steps = 20;
    for (int k = 0; k < steps; ++k) {
        const double v = 1.0 - (k + 0.5) / steps;
        s += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" + std::to_string(top + bar_h * k / steps) +
             "\" width=\"16\" height=\"" + std::to_string(bar_h / steps + 1) + "\" fill=\"" +
             detail::score_color(v) + "\"/>\n";
    }
    s += "<text x=\"" + std::to_string(bar_x + 22) + "\" y=\"" + std::to_string(top + 10) + "\">1.00</text>\n";
    s += "<text x=\"" + std::to_string(bar_x + 22) + "\" y=\"" + std::to_string(top + bar_h) + "\">0.00</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace grade
