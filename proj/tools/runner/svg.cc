#include "runner/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qsc::runner {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Axis {
    bool log = false;
    double lo = 0.0;  // in transformed units
    double hi = 1.0;
    double floor_value = 0.0;  // log axes clamp to this

    double transform(double v) const { return log ? std::log10(v) : v; }
};

Axis make_axis(const std::vector<double>& values, bool log) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (log && v <= 0) {
            continue;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) {
        lo = 1.0;
        hi = 10.0;
    }
    if (log) {
        a.floor_value = lo;
        a.lo = std::floor(std::log10(lo));
        a.hi = std::ceil(std::log10(hi));
        if (a.hi <= a.lo) {
            a.hi = a.lo + 1;
        }
    } else {
        lo = std::min(lo, 0.0);
        if (hi <= lo) {
            hi = lo + 1;
        }
        a.lo = lo;
        a.hi = hi + 0.05 * (hi - lo);
    }
    return a;
}

std::vector<double> ticks(const Axis& a) {
    std::vector<double> out;
    if (a.log) {
        for (double e = a.lo; e <= a.hi + 1e-9; e += 1) {
            out.push_back(e);
        }
        return out;
    }
    const double span = a.hi - a.lo;
    const double raw = span / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    for (double t = std::ceil(a.lo / step) * step; t <= a.hi + 1e-9; t += step) {
        out.push_back(t);
    }
    return out;
}

std::string tick_label(const Axis& a, double t) {
    char buf[32];
    if (a.log) {
        std::snprintf(buf, sizeof buf, "%g", std::pow(10.0, t));
    } else {
        std::snprintf(buf, sizeof buf, "%g", t);
    }
    return buf;
}

}  // namespace

SvgDocument emit_svg(const std::vector<SummaryRow>& rows, const AxesSpec& axes) {
    if (rows.empty()) {
        throw std::invalid_argument("cannot plot an empty summary");
    }
    using SeriesKey = std::tuple<int, double, bool, double>;
    std::map<SeriesKey, std::vector<std::pair<double, double>>> series;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : rows) {
        auto& s = series[{r.d, r.lambda, r.alpha.has_value(), r.alpha.value_or(0.0)}];
        if (!r.mean_rounds) {
            continue;
        }
        s.emplace_back(r.n, *r.mean_rounds);
        xs.push_back(r.n);
        ys.push_back(*r.mean_rounds);
    }

    SvgDocument doc;
    const Axis ax = make_axis(xs, axes.x_log);
    const Axis ay = make_axis(ys, axes.y_log);
    const double plot_w = axes.width - kMarginLeft - kMarginRight;
    const double plot_h = axes.height - kMarginTop - kMarginBottom;

    auto clamp = [&](const Axis& a, double v, const char* name) {
        if (a.log && v <= 0) {
            doc.warnings.push_back(std::string("clamped ") + name + " value " + format_number(v) +
                                   " to log-axis minimum " + format_number(a.floor_value));
            return a.floor_value;
        }
        return v;
    };
    auto px = [&](double x) { return kMarginLeft + (ax.transform(x) - ax.lo) / (ax.hi - ax.lo) * plot_w; };
    auto py = [&](double y) {
        return kMarginTop + plot_h - (ay.transform(y) - ay.lo) / (ay.hi - ay.lo) * plot_h;
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << axes.width << "\" height=\"" << axes.height
        << "\" viewBox=\"0 0 " << axes.width << ' ' << axes.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << axes.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << axes.title << "</text>\n"
        << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << fixed(plot_w)
        << "\" height=\"" << fixed(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ticks(ax)) {
        const double x = kMarginLeft + (t - ax.lo) / (ax.hi - ax.lo) * plot_w;
        out << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kMarginTop + plot_h) << "\" x2=\"" << fixed(x)
            << "\" y2=\"" << fixed(kMarginTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kMarginTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << tick_label(ax, t)
            << "</text>\n";
    }
    for (double t : ticks(ay)) {
        const double y = kMarginTop + plot_h - (t - ay.lo) / (ay.hi - ay.lo) * plot_h;
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fixed(y) << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << fixed(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fixed(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << tick_label(ay, t)
            << "</text>\n";
    }
    out << "<text x=\"" << fixed(kMarginLeft + plot_w / 2) << "\" y=\"" << axes.height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">n</text>\n";

    int color = 0;
    double legend_y = kMarginTop + 10;
    for (const auto& [key, points] : series) {
        const char* stroke = kPalette[color++ % std::size(kPalette)];
        std::string label = "d=" + std::to_string(std::get<0>(key)) + " lambda=" + format_number(std::get<1>(key));
        if (std::get<2>(key)) {
            label += " alpha=" + format_number(std::get<3>(key));
        }
        if (!points.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
            std::vector<std::pair<double, double>> placed;
            for (std::size_t k = 0; k < points.size(); ++k) {
                const double x = px(clamp(ax, points[k].first, "x"));
                const double y = py(clamp(ay, points[k].second, "y"));
                placed.emplace_back(x, y);
                out << (k ? " " : "") << fixed(x) << ',' << fixed(y);
            }
            out << "\"/>\n";
            for (const auto& [x, y] : placed) {
                out << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y) << "\" r=\"3\" fill=\"" << stroke
                    << "\"/>\n";
            }
        }
        out << "<text x=\"" << fixed(kMarginLeft + plot_w + 10) << "\" y=\"" << fixed(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << stroke << "\">" << label << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
    doc.text = out.str();
    return doc;
}

}  // namespace qsc::runner
