#include "raddopt/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace raddopt {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
constexpr std::array<const char*, 8> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

struct Axis {
    bool log = false;
    double lo = 0.0, hi = 1.0;

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    double map(double v) const { return log ? std::log10(v) : v; }
    double frac(double v) const { return hi > lo ? (map(v) - lo) / (hi - lo) : 0.5; }
};

}  // namespace

void render_svg(std::ostream& os, const PlotSpec& spec) {
    Axis ax{spec.log_x}, ay{spec.log_y};
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
            xmin = std::min(xmin, ax.map(s.x[i]));
            xmax = std::max(xmax, ax.map(s.x[i]));
            ymin = std::min(ymin, ay.map(s.y[i]));
            ymax = std::max(ymax, ay.map(s.y[i]));
        }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    if (ax.log) xmin = std::floor(xmin), xmax = std::ceil(xmax);
    if (ay.log) ymin = std::floor(ymin), ymax = std::ceil(ymax);
    ax.lo = xmin, ax.hi = xmax, ay.lo = ymin, ay.hi = ymax;

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + ax.frac(v) * pw; };
    auto py = [&](double v) { return kTop + (1.0 - ay.frac(v)) * ph; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = static_cast<double>(i) / ticks;
        const double vx = ax.lo + fx * (ax.hi - ax.lo);
        const double sx = kLeft + fx * pw;
        os << "<line x1=\"" << sx << "\" y1=\"" << kTop + ph << "\" x2=\"" << sx << "\" y2=\"" << kTop + ph + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << sx << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
           << (ax.log ? "1e" + num(vx) : num(vx)) << "</text>\n";
        const double vy = ay.lo + fx * (ay.hi - ay.lo);
        const double sy = kTop + (1.0 - fx) * ph;
        os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy << "\" x2=\"" << kLeft << "\" y2=\"" << sy
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
           << (ay.log ? "1e" + num(vy) : num(vy)) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
       << escape(spec.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << kTop + ph / 2 << ")\">" << escape(spec.y_label) << "</text>\n";

    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& s = spec.series[k];
        const char* color = kColors[k % kColors.size()];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
            os << (first ? "" : " ") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
            first = false;
        }
        os << "\"/>\n";
        const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 35
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace raddopt
