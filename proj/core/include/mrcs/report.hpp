#pragma once

#include <string>
#include <vector>

namespace mrcs {

// CSV with a versioned schema string in a comment on row 1.
struct CsvTable {
    std::string schema;                          // e.g. "mrcs-compare-v1"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // each sized like columns
};
void write_csv(const CsvTable& table, const std::string& path);

// Minimal static SVG plotting: scatter points, optionally connected into a
// polyline (used for Pareto fronts and robustness curves).
struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    bool connect = false;
    std::vector<std::pair<double, double>> points;
};
struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
};
void write_svg(const SvgPlot& plot, const std::string& path);

}  // namespace mrcs
