#pragma once

#include <string>
#include <vector>

#include "uavcache/geometry.hpp"

namespace uavcache {

/// Minimal self-contained SVG chart writer: scatter and polyline series on
/// auto-scaled axes with nice ticks and a legend. The CSV next to each plot
/// is the canonical artifact; these files exist for a quick desk look
/// without external tooling.
class SvgPlot {
public:
    SvgPlot(std::string x_label, std::string y_label, bool log_y = false);

    /// Non-finite points are dropped; on a log axis nonpositive y too.
    void add_scatter(std::vector<Vec2> pts, std::string label,
                     std::string color, double radius = 3.0);
    void add_polyline(std::vector<Vec2> pts, std::string label,
                      std::string color, double stroke = 1.8);

    /// Renders the chart; throws ConfigError when the file cannot be written.
    void write(const std::string& path) const;

private:
    struct Series {
        std::vector<Vec2> pts;
        std::string label;
        std::string color;
        double size;
        bool line;
    };

    std::string x_label_;
    std::string y_label_;
    bool log_y_;
    std::vector<Series> series_;
};

}  // namespace uavcache
