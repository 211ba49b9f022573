#include "raddopt/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "raddopt/augmented.hpp"
#include "raddopt/error.hpp"
#include "raddopt/matrix_engine.hpp"
#include "raddopt/svg.hpp"

namespace raddopt {

Problem load_problem(const RunConfig& cfg) {
    Digraph graph = load_graph(cfg.graph_path);
    WeightMatrix weights = build_weight_matrix(graph);

    DelaySource delays = cfg.delay_mode == DelayMode::fixed ? DelaySource(load_delays(cfg.delays_path, graph))
                         : cfg.delay_mode == DelayMode::uniform
                             ? DelaySource(DelayAssignment::uniform(graph, cfg.delay_bound))
                             : DelaySource(TimeVaryingDelaySampler(cfg.delay_bound, cfg.seed));

    std::vector<QuadraticObjective> quads;
    if (!cfg.objectives_path.empty()) quads = load_quadratics(cfg.objectives_path, graph.node_count());

    std::vector<double> x0;
    if (cfg.x0) {
        x0 = *cfg.x0;
        if (x0.size() != graph.node_count()) {
            throw InputError("<config>", 0,
                             "x0 has " + std::to_string(x0.size()) + " entries for " +
                                 std::to_string(graph.node_count()) + " nodes");
        }
    } else {
        for (const auto& q : quads) x0.push_back(q.phi());
    }

    double x_star = 0.0;
    if (cfg.algorithm == Algorithm::ratio_consensus) {
        x_star = std::accumulate(x0.begin(), x0.end(), 0.0) / static_cast<double>(x0.size());
    } else {
        x_star = closed_form_minimizer(quads);
    }
    ObjectiveSet objectives = to_objective_set(quads);
    return Problem{std::move(graph), std::move(weights), std::move(delays), std::move(quads),
                   std::move(objectives), std::move(x0), x_star};
}

DelayAssignment analysis_delays(const Problem& problem, const RunConfig& cfg) {
    if (cfg.algorithm == Algorithm::add_opt) return DelayAssignment::zero(problem.graph);
    if (const auto* fixed = std::get_if<DelayAssignment>(&problem.delays)) return *fixed;
    return DelayAssignment::uniform(problem.graph, cfg.delay_bound);
}

AnalysisSummary analyze_problem(const Problem& problem, const RunConfig& cfg) {
    if (problem.objectives.empty()) throw DomainError("analysis needs objectives");
    const DelayAssignment d = analysis_delays(problem, cfg);
    const AugmentedSystem aug = build_augmented(problem.weights, d, cfg.prune);

    AnalysisSummary s;
    s.tau_bar = d.tau_bar();
    s.n_bar = aug.n_bar();
    s.conjecture_mode = cfg.delay_mode == DelayMode::time_varying && cfg.algorithm != Algorithm::add_opt;
    s.constants = derive_constants(aug, aggregate_constants(problem.objectives), cfg.overrides,
                                   DeriveOptions{cfg.sigma_method, 2000});
    s.bound = step_size_bound(s.constants);
    const auto grid = log_spaced_grid(s.bound.alpha_bar, cfg.alpha_grid, cfg.alpha_grid_decades);
    s.sweep = sweep_alpha(s.constants, grid);
    return s;
}

double choose_alpha(const RunConfig& cfg, const std::optional<AnalysisSummary>& analysis) {
    switch (cfg.alpha.kind) {
        case AlphaChoice::Kind::fixed: return cfg.alpha.value;
        case AlphaChoice::Kind::auto_min_rho:
            if (!analysis) throw DomainError("auto-min-rho needs an analysis");
            return analysis->sweep.argmin_alpha;
        case AlphaChoice::Kind::auto_half_bar:
            if (!analysis) throw DomainError("auto-half-bar needs an analysis");
            return 0.5 * analysis->bound.alpha_bar;
    }
    return 0.0;
}

Trace simulate(const Problem& problem, const RunConfig& cfg, double alpha) {
    RunOptions opts;
    opts.max_iter = cfg.max_iter;
    opts.tol = cfg.tol;
    switch (cfg.algorithm) {
        case Algorithm::ratio_consensus:
            return ratio_consensus_run(problem.graph, problem.weights, problem.delays, problem.x0, opts);
        case Algorithm::add_opt:
            return add_opt_run(problem.weights, problem.objectives, problem.x0, alpha, problem.x_star, opts);
        case Algorithm::radd_opt_matrix: {
            const auto& d = std::get<DelayAssignment>(problem.delays);
            const AugmentedSystem aug = build_augmented(problem.weights, d, cfg.prune);
            return radd_opt_run_matrix(aug, problem.objectives, problem.x0, alpha, problem.x_star, opts);
        }
        case Algorithm::radd_opt_mp: {
            Trace t = radd_opt_run_message_passing(problem.graph, problem.weights, problem.delays, problem.objectives,
                                                   problem.x0, alpha, cfg.interpretation, problem.x_star, opts);
            if (cfg.delay_mode == DelayMode::time_varying) t.meta.seed = cfg.seed;
            return t;
        }
    }
    throw DomainError("unknown algorithm");
}

namespace {

void put(std::ostream& os, const char* key, double v) { os << key << " = " << v << '\n'; }

std::string write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path.string(), 0, "cannot write file");
    out << content;
    return path.string();
}

PlotSpec residual_plot(const Trace& trace) {
    PlotSpec p;
    p.title = "residual";
    p.x_label = "k";
    p.y_label = "residual";
    p.log_y = true;
    Series s;
    s.name = trace.meta.algorithm;
    for (const auto& r : trace.rows()) {
        s.x.push_back(static_cast<double>(r.k));
        s.y.push_back(r.residual);
    }
    p.series.push_back(std::move(s));
    return p;
}

PlotSpec rho_plot(const AlphaSweep& sweep) {
    PlotSpec p;
    p.title = "spectral radius of G(alpha)";
    p.x_label = "alpha";
    p.y_label = "rho";
    p.log_x = true;
    Series s;
    s.name = "rho";
    for (const auto& pt : sweep.points) {
        s.x.push_back(pt.alpha);
        s.y.push_back(pt.rho);
    }
    p.series.push_back(std::move(s));
    return p;
}

}  // namespace

void write_summary(std::ostream& os, const RunConfig& cfg, const std::optional<AnalysisSummary>& analysis,
                   double alpha, const Trace* trace, int exit_code) {
    os << std::setprecision(17);
    os << "algorithm = " << to_string(cfg.algorithm) << '\n';
    if (cfg.algorithm == Algorithm::radd_opt_mp) os << "interpretation = " << to_string(cfg.interpretation) << '\n';
    os << "delay_mode = " << to_string(cfg.delay_mode) << '\n';
    if (cfg.delay_mode == DelayMode::time_varying) os << "seed = " << cfg.seed << '\n';
    if (analysis) {
        const auto& cc = analysis->constants;
        os << "tau_bar = " << analysis->tau_bar << '\n';
        os << "n_bar = " << analysis->n_bar << '\n';
        os << "conjecture_mode = " << (analysis->conjecture_mode ? "true" : "false") << '\n';
        os << "sigma_method = " << to_string(cfg.sigma_method) << '\n';
        put(os, "sigma", cc.sigma);
        put(os, "c", cc.c);
        put(os, "d", cc.d);
        put(os, "L", cc.lipschitz);
        put(os, "mu", cc.strong_convexity);
        put(os, "y", cc.y_sup);
        put(os, "y_tilde", cc.y_tilde);
        put(os, "epsilon", cc.epsilon);
        put(os, "xi", cc.xi_norm);
        put(os, "delta", analysis->bound.delta);
        put(os, "theta", analysis->bound.theta);
        put(os, "alpha_bar", analysis->bound.alpha_bar);
        put(os, "argmin_alpha", analysis->sweep.argmin_alpha);
        put(os, "min_rho", analysis->sweep.min_rho);
    }
    if (trace) {
        put(os, "alpha", alpha);
        put(os, "x_star", trace->meta.x_star);
        os << "steps = " << trace->steps() << '\n';
        put(os, "final_residual", trace->final_residual());
        os << "converged = " << (trace->converged ? "true" : "false") << '\n';
    }
    os << "exit_code = " << exit_code << '\n';
}

void write_alpha_rho_csv(std::ostream& os, const AlphaSweep& sweep) {
    os << std::setprecision(17) << "alpha,rho\n";
    for (const auto& p : sweep.points) os << p.alpha << ',' << p.rho << '\n';
}

ExperimentResult run_experiment(const RunConfig& cfg, bool svg) {
    ExperimentResult res;
    const std::filesystem::path out(cfg.out_dir);
    try {
        const Problem problem = load_problem(cfg);
        if (cfg.algorithm != Algorithm::ratio_consensus) {
            try {
                res.analysis = analyze_problem(problem, cfg);
            } catch (const AnalysisError&) {
                if (cfg.alpha.kind != AlphaChoice::Kind::fixed) throw;
            }
        }
        res.alpha = cfg.algorithm == Algorithm::ratio_consensus ? 0.0 : choose_alpha(cfg, res.analysis);
        std::filesystem::create_directories(out);
        try {
            res.trace = simulate(problem, cfg, res.alpha);
            res.exit_code = res.trace->converged ? kExitConverged : kExitNotConverged;
            res.message = res.trace->converged
                              ? "converged in " + std::to_string(res.trace->steps()) + " steps"
                              : "residual above tol after " + std::to_string(res.trace->steps()) + " steps";
        } catch (const DivergenceError& e) {
            res.exit_code = kExitDiverged;
            res.message = e.what();
        }
        if (res.trace) {
            std::ostringstream csv;
            res.trace->write_csv(csv);
            res.files.push_back(write_text(out / "trace.csv", csv.str()));
            if (svg) {
                std::ostringstream s;
                render_svg(s, residual_plot(*res.trace));
                res.files.push_back(write_text(out / "residual.svg", s.str()));
            }
        }
        if (res.analysis) {
            std::ostringstream csv;
            write_alpha_rho_csv(csv, res.analysis->sweep);
            res.files.push_back(write_text(out / "alpha_rho.csv", csv.str()));
            if (svg) {
                std::ostringstream s;
                render_svg(s, rho_plot(res.analysis->sweep));
                res.files.push_back(write_text(out / "alpha_rho.svg", s.str()));
            }
        }
        std::ostringstream summary;
        write_summary(summary, cfg, res.analysis, res.alpha, res.trace ? &*res.trace : nullptr, res.exit_code);
        res.files.push_back(write_text(out / "summary.txt", summary.str()));
    } catch (const Error& e) {
        res.exit_code = kExitInputError;
        res.message = e.what();
    } catch (const std::filesystem::filesystem_error& e) {
        res.exit_code = kExitInputError;
        res.message = e.what();
    }
    return res;
}

ExperimentResult run_analysis(const RunConfig& cfg_in, std::optional<std::size_t> grid_points, bool svg) {
    RunConfig cfg = cfg_in;
    if (grid_points) cfg.alpha_grid = *grid_points;
    ExperimentResult res;
    const std::filesystem::path out(cfg.out_dir);
    try {
        if (cfg.alpha_grid == 0) throw DomainError("grid needs at least one point");
        const Problem problem = load_problem(cfg);
        res.analysis = analyze_problem(problem, cfg);
        res.alpha = choose_alpha(cfg, res.analysis);
        std::filesystem::create_directories(out);
        std::ostringstream csv;
        write_alpha_rho_csv(csv, res.analysis->sweep);
        res.files.push_back(write_text(out / "alpha_rho.csv", csv.str()));
        if (svg) {
            std::ostringstream s;
            render_svg(s, rho_plot(res.analysis->sweep));
            res.files.push_back(write_text(out / "alpha_rho.svg", s.str()));
        }
        res.exit_code = kExitConverged;
        std::ostringstream summary;
        write_summary(summary, cfg, res.analysis, res.alpha, nullptr, res.exit_code);
        res.files.push_back(write_text(out / "summary.txt", summary.str()));
        res.message = "alpha_bar = " + std::to_string(res.analysis->bound.alpha_bar);
    } catch (const Error& e) {
        res.exit_code = kExitInputError;
        res.message = e.what();
    } catch (const std::filesystem::filesystem_error& e) {
        res.exit_code = kExitInputError;
        res.message = e.what();
    }
    return res;
}

}  // namespace raddopt
