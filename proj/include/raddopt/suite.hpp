#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace raddopt {

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

struct ManifestEntry {
    std::string path;  // relative to the suite output directory
    std::string sha256;
    std::string cell;
    std::string status;  // ok | failed
    std::string detail;
};

struct SuiteOptions {
    std::string out_dir = "paper-out";
    std::vector<std::size_t> delay_bounds{0, 2, 5, 10};
    std::vector<std::size_t> time_varying_bounds{2, 5, 10};
    std::uint64_t base_seed = 1;
    std::size_t seed_count = 10;
    std::size_t horizon = 5000;  // residual curves run the full horizon
    double tol = 1e-10;          // reported per curve, not used to stop
    std::size_t alpha_grid = 200;
    bool svg = false;
};

struct SuiteResult {
    int exit_code = 0;  // 0, or 4 when any cell failed
    std::vector<ManifestEntry> manifest;
};

// Canonical five-node example: sigma table, rho(G_alpha) curves, fixed-delay residual
// curves for both engines, and time-varying ensembles. Cells run concurrently, each
// writing to its own directory; manifest.csv is written last.
SuiteResult reproduce_paper_suite(const SuiteOptions& options);

}  // namespace raddopt
