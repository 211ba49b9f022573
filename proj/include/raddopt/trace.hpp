#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace raddopt {

// Mean squared deviation (1/n) sum_i (z_i - x_star)^2. Zero for an empty vector.
double residual(std::span<const double> z, double x_star);

struct TraceRow {
    std::size_t k = 0;
    double residual = 0.0;
    std::vector<double> z;  // actual nodes only
};

// Full augmented vectors at one step; recorded only on request.
struct AugmentedSnapshot {
    std::vector<double> x, y, z, w;
};

struct TraceMeta {
    std::string algorithm;
    std::string interpretation;
    double alpha = 0.0;
    std::optional<std::uint64_t> seed;
    std::string delay_model;
    double x_star = 0.0;
};

// Per-step record of a run. Steps are contiguous from 0.
class Trace {
public:
    TraceMeta meta;

    void append(std::span<const double> z);
    void append_snapshot(AugmentedSnapshot snap) { snapshots_.push_back(std::move(snap)); }

    const std::vector<TraceRow>& rows() const noexcept { return rows_; }
    const std::vector<AugmentedSnapshot>& snapshots() const noexcept { return snapshots_; }
    std::size_t steps() const noexcept { return rows_.empty() ? 0 : rows_.size() - 1; }
    double final_residual() const;
    std::vector<double> residuals() const;

    bool converged = false;  // stopped because residual <= tol

    // CSV: header `k,residual,z_1,...,z_n`, values with 17 significant digits.
    void write_csv(std::ostream& os) const;

private:
    std::vector<TraceRow> rows_;
    std::vector<AugmentedSnapshot> snapshots_;
};

struct RunOptions {
    std::size_t max_iter = 5000;
    // Stop once residual <= tol; nullopt runs all max_iter steps.
    std::optional<double> tol = 1e-10;
    bool record_augmented = false;
    double divergence_bound = 1e12;
};

}  // namespace raddopt
