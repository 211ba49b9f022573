#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "raddopt/config.hpp"
#include "raddopt/error.hpp"
#include "raddopt/experiment.hpp"
#include "raddopt/suite.hpp"

namespace {

int report(const raddopt::ExperimentResult& r) {
    for (const auto& f : r.files) std::cout << "wrote " << f << '\n';
    (r.exit_code == 0 ? std::cout : std::cerr) << r.message << '\n';
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay-robust distributed optimization over digraphs"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::string format = "csv";
    app.add_option("--seed", seed, "Seed for time-varying delays (overrides the config)");
    app.add_option("--format", format, "Artifact format")->check(CLI::IsMember({"csv", "svg"}));

    std::string config_path, out_dir;
    std::size_t grid = 200;

    auto* sim = app.add_subcommand("simulate", "Run one experiment");
    sim->add_option("--config", config_path, "Config file")->required();
    sim->add_option("--out", out_dir, "Output directory (overrides out_dir)");

    auto* ana = app.add_subcommand("analyze", "Compute constants, step-size bound and rho(G_alpha)");
    ana->add_option("--config", config_path, "Config file")->required();
    ana->add_option("--out", out_dir, "Output directory (overrides out_dir)");

    auto* sweep = app.add_subcommand("sweep-alpha", "Write the alpha-rho curve");
    sweep->add_option("--config", config_path, "Config file")->required();
    sweep->add_option("--grid", grid, "Number of log-spaced grid points")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_dir, "Output directory (overrides out_dir)");

    raddopt::SuiteOptions suite;
    auto* rep = app.add_subcommand("reproduce-paper", "Regenerate the canonical example's tables and curves");
    rep->add_option("--out", suite.out_dir, "Output directory")->required();
    rep->add_option("--seeds", suite.seed_count, "Seeds per time-varying ensemble");
    rep->add_option("--horizon", suite.horizon, "Steps per residual curve");

    CLI11_PARSE(app, argc, argv);
    const bool svg = format == "svg";

    try {
        if (rep->parsed()) {
            if (seed) suite.base_seed = *seed;
            suite.svg = svg;
            const auto res = raddopt::reproduce_paper_suite(suite);
            for (const auto& m : res.manifest) {
                if (m.status != "ok") std::cerr << "failed: " << m.cell << ": " << m.detail << '\n';
            }
            std::cout << "wrote " << res.manifest.size() << " artifacts and " << suite.out_dir << "/manifest.csv\n";
            return res.exit_code;
        }

        raddopt::RunConfig cfg = raddopt::load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (sim->parsed()) return report(raddopt::run_experiment(cfg, svg));
        if (ana->parsed()) return report(raddopt::run_analysis(cfg, std::nullopt, svg));
        return report(raddopt::run_analysis(cfg, grid, svg));
    } catch (const raddopt::Error& e) {
        std::cerr << e.what() << '\n';
        return raddopt::kExitInputError;
    }
}
