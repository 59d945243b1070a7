#pragma once

#include <string>
#include <utility>
#include <vector>

namespace schmidt::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool markers = false;  // circles instead of a polyline
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<Series> series;
};

// Side-by-side panels in one standalone SVG document. Output depends only on
// the inputs. Non-positive values are dropped from log-scale panels.
std::string render(const std::vector<Panel>& panels);

}  // namespace schmidt::svg
