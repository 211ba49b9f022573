#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raddopt/analysis.hpp"
#include "raddopt/config.hpp"
#include "raddopt/delays.hpp"
#include "raddopt/digraph.hpp"
#include "raddopt/message_passing.hpp"
#include "raddopt/objectives.hpp"
#include "raddopt/trace.hpp"

namespace raddopt {

enum ExitCode : int { kExitConverged = 0, kExitInputError = 1, kExitNotConverged = 2, kExitDiverged = 3 };

// Everything a run needs, loaded from the files a RunConfig points at.
struct Problem {
    Digraph graph;
    WeightMatrix weights;
    DelaySource delays;
    std::vector<QuadraticObjective> quadratics;  // empty for pure ratio consensus
    ObjectiveSet objectives;
    std::vector<double> x0;
    double x_star = 0.0;
};

Problem load_problem(const RunConfig& cfg);

// Fixed delays for the augmented analysis. Time-varying runs are analysed with the
// uniform worst case tau_bar* (conjecture mode).
DelayAssignment analysis_delays(const Problem& problem, const RunConfig& cfg);

struct AnalysisSummary {
    std::size_t tau_bar = 0;
    std::size_t n_bar = 0;
    bool conjecture_mode = false;
    ConvergenceConstants constants;
    StepSizeBound bound;
    AlphaSweep sweep;
};

AnalysisSummary analyze_problem(const Problem& problem, const RunConfig& cfg);

// Step-size chosen by cfg.alpha; `analysis` must be present for the automatic modes.
double choose_alpha(const RunConfig& cfg, const std::optional<AnalysisSummary>& analysis);

// Runs the configured algorithm in memory. Throws on bad input or divergence.
Trace simulate(const Problem& problem, const RunConfig& cfg, double alpha);

struct ExperimentResult {
    int exit_code = kExitInputError;
    std::string message;
    std::optional<Trace> trace;
    std::optional<AnalysisSummary> analysis;
    double alpha = 0.0;
    std::vector<std::string> files;  // written artifacts, in write order
};

// Loads, analyses, simulates and writes trace.csv, summary.txt and (when an analysis
// ran) alpha_rho.csv into cfg.out_dir. Never throws for input, analysis or divergence
// failures; they become exit codes with a message.
ExperimentResult run_experiment(const RunConfig& cfg, bool svg = false);

// Analysis only: summary.txt and alpha_rho.csv (grid of `grid_points`, default
// cfg.alpha_grid). Exit 0 or 1.
ExperimentResult run_analysis(const RunConfig& cfg, std::optional<std::size_t> grid_points = std::nullopt,
                              bool svg = false);

void write_summary(std::ostream& os, const RunConfig& cfg, const std::optional<AnalysisSummary>& analysis,
                   double alpha, const Trace* trace, int exit_code);
void write_alpha_rho_csv(std::ostream& os, const AlphaSweep& sweep);

}  // namespace raddopt
