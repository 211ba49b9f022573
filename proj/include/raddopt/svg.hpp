#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace raddopt {

struct Series {
    std::string name;
    std::vector<double> x, y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
};

// Static line chart. Points that are non-finite, or non-positive on a log axis, are
// skipped. Output depends only on the spec.
void render_svg(std::ostream& os, const PlotSpec& spec);

}  // namespace raddopt
