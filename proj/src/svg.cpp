#include "uavcache/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "uavcache/errors.hpp"

namespace uavcache {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginL = 72;
constexpr double kMarginR = 18;
constexpr double kMarginT = 18;
constexpr double kMarginB = 52;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Tick step of the form {1,2,5}*10^k giving roughly `target` intervals.
std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
    const double span = hi - lo;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step =
        mag * (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0);
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 0.5 * step;
         t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

}  // namespace

SvgPlot::SvgPlot(std::string x_label, std::string y_label, bool log_y)
    : x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      log_y_(log_y) {}

void SvgPlot::add_scatter(std::vector<Vec2> pts, std::string label,
                          std::string color, double radius) {
    series_.push_back(
        {std::move(pts), std::move(label), std::move(color), radius, false});
}

void SvgPlot::add_polyline(std::vector<Vec2> pts, std::string label,
                           std::string color, double stroke) {
    series_.push_back(
        {std::move(pts), std::move(label), std::move(color), stroke, true});
}

void SvgPlot::write(const std::string& path) const {
    // Collect plottable points in axis space (y already log10 when log_y_).
    std::vector<std::vector<Vec2>> axis_pts(series_.size());
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (std::size_t i = 0; i < series_.size(); ++i) {
        for (const Vec2& p : series_[i].pts) {
            if (!std::isfinite(p.x()) || !std::isfinite(p.y())) continue;
            if (log_y_ && p.y() <= 0.0) continue;
            const double y = log_y_ ? std::log10(p.y()) : p.y();
            axis_pts[i].push_back(Vec2(p.x(), y));
            x0 = std::min(x0, p.x());
            x1 = std::max(x1, p.x());
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x0 <= x1)) {  // nothing plottable: emit an empty frame
        x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    }
    if (x1 - x0 < 1e-12) {
        const double pad = std::max(1.0, std::abs(x0)) * 0.1;
        x0 -= pad, x1 += pad;
    }
    if (y1 - y0 < 1e-12) {
        const double pad = std::max(log_y_ ? 0.5 : 1.0, std::abs(y0)) * 0.1;
        y0 -= pad, y1 += pad;
    }

    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    auto px = [&](double x) { return kMarginL + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) {
        return kHeight - kMarginB - (y - y0) / (y1 - y0) * ph;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";

    // Grid and tick labels.
    for (double t : nice_ticks(x0, x1)) {
        const double X = px(t);
        out << "<line x1=\"" << fmt(X) << "\" y1=\"" << fmt(kMarginT)
            << "\" x2=\"" << fmt(X) << "\" y2=\"" << fmt(kHeight - kMarginB)
            << "\" stroke=\"#e4e4e4\"/>\n";
        out << "<text x=\"" << fmt(X) << "\" y=\"" << fmt(kHeight - kMarginB + 16)
            << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    }
    if (log_y_) {
        for (int e = static_cast<int>(std::ceil(y0 - 1e-9));
             e <= static_cast<int>(std::floor(y1 + 1e-9)); ++e) {
            const double Yc = py(e);
            out << "<line x1=\"" << fmt(kMarginL) << "\" y1=\"" << fmt(Yc)
                << "\" x2=\"" << fmt(kWidth - kMarginR) << "\" y2=\"" << fmt(Yc)
                << "\" stroke=\"#e4e4e4\"/>\n";
            out << "<text x=\"" << fmt(kMarginL - 6) << "\" y=\"" << fmt(Yc + 4)
                << "\" text-anchor=\"end\">" << fmt(std::pow(10.0, e))
                << "</text>\n";
        }
    } else {
        for (double t : nice_ticks(y0, y1)) {
            const double Yc = py(t);
            out << "<line x1=\"" << fmt(kMarginL) << "\" y1=\"" << fmt(Yc)
                << "\" x2=\"" << fmt(kWidth - kMarginR) << "\" y2=\"" << fmt(Yc)
                << "\" stroke=\"#e4e4e4\"/>\n";
            out << "<text x=\"" << fmt(kMarginL - 6) << "\" y=\"" << fmt(Yc + 4)
                << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
        }
    }

    // Axes frame and labels.
    out << "<rect x=\"" << fmt(kMarginL) << "\" y=\"" << fmt(kMarginT)
        << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
        << "\" fill=\"none\" stroke=\"#666\"/>\n";
    out << "<text x=\"" << fmt(kMarginL + pw / 2) << "\" y=\""
        << fmt(kHeight - 10) << "\" text-anchor=\"middle\">" << x_label_
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << fmt(kMarginT + ph / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt(kMarginT + ph / 2) << ")\">" << y_label_ << "</text>\n";

    // Series.
    for (std::size_t i = 0; i < series_.size(); ++i) {
        const Series& s = series_[i];
        const auto& pts = axis_pts[i];
        if (pts.empty()) continue;
        if (s.line) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"" << fmt(s.size) << "\" points=\"";
            for (const Vec2& p : pts)
                out << fmt(px(p.x())) << "," << fmt(py(p.y())) << " ";
            out << "\"/>\n";
        } else {
            for (const Vec2& p : pts)
                out << "<circle cx=\"" << fmt(px(p.x())) << "\" cy=\""
                    << fmt(py(p.y())) << "\" r=\"" << fmt(s.size)
                    << "\" fill=\"" << s.color << "\" fill-opacity=\"0.75\"/>\n";
        }
    }

    // Legend, top right inside the frame.
    double ly = kMarginT + 16;
    for (const Series& s : series_) {
        if (s.label.empty()) continue;
        const double lx = kWidth - kMarginR - 170;
        if (s.line)
            out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4)
                << "\" x2=\"" << fmt(lx + 22) << "\" y2=\"" << fmt(ly - 4)
                << "\" stroke=\"" << s.color << "\" stroke-width=\"2.5\"/>\n";
        else
            out << "<circle cx=\"" << fmt(lx + 11) << "\" cy=\"" << fmt(ly - 4)
                << "\" r=\"4\" fill=\"" << s.color << "\"/>\n";
        out << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(ly) << "\">"
            << s.label << "</text>\n";
        ly += 18;
    }

    out << "</g>\n</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open " + path + " for writing");
    f << out.str();
    if (!f.good()) throw ConfigError("failed writing " + path);
}

}  // namespace uavcache
