#include "raddopt/trace.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "raddopt/error.hpp"

namespace raddopt {

double residual(std::span<const double> z, double x_star) {
    if (z.empty()) return 0.0;
    double sum = 0.0;
    for (double v : z) sum += (v - x_star) * (v - x_star);
    return sum / static_cast<double>(z.size());
}

void Trace::append(std::span<const double> z) {
    if (!rows_.empty() && rows_.front().z.size() != z.size()) {
        throw StructuralError("trace row width changed");
    }
    rows_.push_back({rows_.size(), residual(z, meta.x_star), {z.begin(), z.end()}});
}

double Trace::final_residual() const {
    if (rows_.empty()) throw StructuralError("empty trace");
    return rows_.back().residual;
}

std::vector<double> Trace::residuals() const {
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.residual);
    return out;
}

void Trace::write_csv(std::ostream& os) const {
    const std::size_t n = rows_.empty() ? 0 : rows_.front().z.size();
    os << "k,residual";
    for (std::size_t i = 1; i <= n; ++i) os << ",z_" << i;
    os << '\n';
    std::ostringstream line;
    line << std::setprecision(17);
    for (const auto& row : rows_) {
        line.str({});
        line << row.k << ',' << row.residual;
        for (double v : row.z) line << ',' << v;
        os << line.str() << '\n';
    }
}

}  // namespace raddopt
