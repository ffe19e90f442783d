#include "speedopt/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace speedopt {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 560;
constexpr int kMarginL = 80, kMarginR = 40, kMarginT = 50, kMarginB = 70;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

struct Extent {
    double xmin = std::numeric_limits<double>::max();
    double xmax = std::numeric_limits<double>::lowest();
    double ymin = std::numeric_limits<double>::max();
    double ymax = std::numeric_limits<double>::lowest();
};

Extent extent_of(const std::vector<PlotSeries>& series) {
    Extent e;
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            e.xmin = std::min(e.xmin, p.x);
            e.xmax = std::max(e.xmax, p.x);
            e.ymin = std::min(e.ymin, p.y);
            e.ymax = std::max(e.ymax, p.y);
        }
    }
    if (e.xmin > e.xmax) e = {0, 1, 0, 1};
    if (e.xmin == e.xmax) { e.xmin -= 0.5; e.xmax += 0.5; }
    if (e.ymin == e.ymax) { e.ymin -= 0.5; e.ymax += 0.5; }
    const double dx = 0.06 * (e.xmax - e.xmin), dy = 0.08 * (e.ymax - e.ymin);
    e.xmin -= dx; e.xmax += dx; e.ymin -= dy; e.ymax += dy;
    return e;
}

struct Mapper {
    Extent e;
    double px(double x) const {
        return kMarginL + (x - e.xmin) / (e.xmax - e.xmin) * (kWidth - kMarginL - kMarginR);
    }
    double py(double y) const {
        return kHeight - kMarginB -
               (y - e.ymin) / (e.ymax - e.ymin) * (kHeight - kMarginT - kMarginB);
    }
};

void emit(std::ostream& os, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    os << buf;
}

void header_and_axes(std::ostream& os, const Mapper& m, const std::string& title,
                     const std::string& x_label, const std::string& y_label) {
    emit(os,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
         "viewBox=\"0 0 %d %d\">\n",
         kWidth, kHeight, kWidth, kHeight);
    emit(os, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", kWidth, kHeight);
    emit(os,
         "<text x=\"%d\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" "
         "text-anchor=\"middle\">%s</text>\n",
         kWidth / 2, title.c_str());

    // frame
    emit(os,
         "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" stroke=\"#444\"/>\n",
         kMarginL, kMarginT, kWidth - kMarginL - kMarginR, kHeight - kMarginT - kMarginB);

    // 5 ticks per axis
    for (int i = 0; i <= 5; ++i) {
        const double xv = m.e.xmin + (m.e.xmax - m.e.xmin) * i / 5.0;
        const double yv = m.e.ymin + (m.e.ymax - m.e.ymin) * i / 5.0;
        emit(os,
             "<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" stroke=\"#ccc\"/>\n",
             m.px(xv), kMarginT, m.px(xv), kHeight - kMarginB);
        emit(os,
             "<text x=\"%.1f\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" "
             "text-anchor=\"middle\">%.4g</text>\n",
             m.px(xv), kHeight - kMarginB + 18, xv);
        emit(os,
             "<line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" stroke=\"#ccc\"/>\n",
             kMarginL, m.py(yv), kWidth - kMarginR, m.py(yv));
        emit(os,
             "<text x=\"%d\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
             "text-anchor=\"end\">%.4g</text>\n",
             kMarginL - 8, m.py(yv) + 4, yv);
    }
    emit(os,
         "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\">%s</text>\n",
         kWidth / 2, kHeight - 18, x_label.c_str());
    emit(os,
         "<text x=\"20\" y=\"%d\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 20 %d)\">%s</text>\n",
         kHeight / 2, kHeight / 2, y_label.c_str());
}

}  // namespace

void write_scatter_svg(std::ostream& os, const std::vector<PlotSeries>& series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label, bool label_points) {
    Mapper m{extent_of(series)};
    header_and_axes(os, m, title, x_label, y_label);
    int color = 0;
    int legend_y = kMarginT + 16;
    for (const auto& s : series) {
        const char* c = kPalette[color % 10];
        for (const auto& p : s.points) {
            emit(os, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"5\" fill=\"%s\" opacity=\"0.85\"/>\n",
                 m.px(p.x), m.py(p.y), c);
            if (label_points && series.size() == 1)
                emit(os,
                     "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                     "font-size=\"10\">%s</text>\n",
                     m.px(p.x) + 7, m.py(p.y) - 5, s.name.c_str());
        }
        emit(os,
             "<circle cx=\"%d\" cy=\"%d\" r=\"5\" fill=\"%s\"/>"
             "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
             kWidth - kMarginR - 150, legend_y, c, kWidth - kMarginR - 140, legend_y + 4,
             s.name.c_str());
        legend_y += 18;
        ++color;
    }
    os << "</svg>\n";
}

void write_lines_svg(std::ostream& os, const std::vector<PlotSeries>& series,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label) {
    Mapper m{extent_of(series)};
    header_and_axes(os, m, title, x_label, y_label);
    int color = 0;
    int legend_y = kMarginT + 16;
    for (const auto& s : series) {
        const char* c = kPalette[color % 10];
        os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
        char pt[64];
        for (const auto& p : s.points) {
            std::snprintf(pt, sizeof(pt), "%.1f,%.1f ", m.px(p.x), m.py(p.y));
            os << pt;
        }
        os << "\"/>\n";
        emit(os,
             "<rect x=\"%d\" y=\"%d\" width=\"14\" height=\"4\" fill=\"%s\"/>"
             "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
             kWidth - kMarginR - 150, legend_y - 2, c, kWidth - kMarginR - 130, legend_y + 4,
             s.name.c_str());
        legend_y += 18;
        ++color;
    }
    os << "</svg>\n";
}

}  // namespace speedopt
