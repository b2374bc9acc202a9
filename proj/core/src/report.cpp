#include "mrcs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "mrcs/errors.hpp"

namespace mrcs {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void write_csv(const CsvTable& table, const std::string& path) {
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw ShapeError("report: CSV row width does not match the header");
    std::ofstream out(path);
    if (!out) throw IoError("report: cannot write " + path);
    out << "# schema: " << table.schema << "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_escape(row[i]);
        out << "\n";
    }
    if (!out) throw IoError("report: write failed for " + path);
}

void write_svg(const SvgPlot& plot, const std::string& path) {
    constexpr double W = 720, H = 480;
    constexpr double ml = 70, mr = 160, mt = 40, mb = 55;  // margins

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : plot.series)
        for (auto [x, y] : s.points) {
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    if (!(x0 <= x1)) { x0 = 0; x1 = 1; y0 = 0; y1 = 1; }
    if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
    if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
    const double padx = 0.05 * (x1 - x0), pady = 0.05 * (y1 - y0);
    x0 -= padx; x1 += padx; y0 -= pady; y1 += pady;

    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw IoError("report: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(plot.title)
        << "</text>\n";

    // Axes with 5 ticks each.
    out << "<g stroke=\"#333\" stroke-width=\"1\" font-family=\"sans-serif\" "
           "font-size=\"11\">\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
        << "\" y2=\"" << H - mb << "\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << H - mb << "\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x0 + (x1 - x0) * i / 5, yv = y0 + (y1 - y0) * i / 5;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\""
            << px(xv) << "\" y2=\"" << H - mb + 5 << "\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" stroke=\"none\">" << fmt(xv) << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
            << "\" y2=\"" << py(yv) << "\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" stroke=\"none\">" << fmt(yv) << "</text>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(plot.x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (mt + H - mb) / 2 << ")\">"
        << xml_escape(plot.y_label) << "</text>\n";

    double legend_y = mt + 10;
    for (const auto& s : plot.series) {
        if (s.connect && s.points.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\" points=\"";
            for (auto [x, y] : s.points) out << px(x) << "," << py(y) << " ";
            out << "\"/>\n";
        }
        for (auto [x, y] : s.points)
            out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                << "\" r=\"3.5\" fill=\"" << s.color << "\"/>\n";
        out << "<circle cx=\"" << W - mr + 14 << "\" cy=\"" << legend_y
            << "\" r=\"3.5\" fill=\"" << s.color << "\"/>\n";
        out << "<text x=\"" << W - mr + 24 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << xml_escape(s.label) << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
    if (!out) throw IoError("report: write failed for " + path);
}

}  // namespace mrcs
