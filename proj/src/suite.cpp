#include "raddopt/suite.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "raddopt/augmented.hpp"
#include "raddopt/canonical.hpp"
#include "raddopt/error.hpp"
#include "raddopt/experiment.hpp"
#include "raddopt/matrix_engine.hpp"
#include "raddopt/svg.hpp"
#include "text_util.hpp"

namespace raddopt {

std::string sha256_file(const std::string& path) {
    const std::string bytes = detail::read_file(path);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 failed for " + path);
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
    return os.str();
}

namespace {

namespace fs = std::filesystem;

struct Canonical {
    Digraph graph = canonical::graph();
    WeightMatrix weights = build_weight_matrix(graph);
    std::vector<QuadraticObjective> quads = canonical::quadratics();
    ObjectiveSet objectives = to_objective_set(quads);
    std::vector<double> x0{canonical::kInitialX.begin(), canonical::kInitialX.end()};
    double x_star = closed_form_minimizer(quads);
};

struct AnalysisCell {
    std::size_t tau_bar = 0;
    std::size_t n_bar = 0;
    double sigma = 0.0;
    double weighted_singular = 0.0;
    StepSizeBound bound;
    AlphaSweep sweep;
};

struct CellOutcome {
    std::string cell;
    std::vector<std::string> files;  // relative paths
    bool ok = true;
    std::string detail;
    Trace trace;
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_file(const fs::path& root, const std::string& rel, const std::string& content) {
    const fs::path p = root / rel;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError(p.string(), 0, "cannot write file");
    out << content;
}

AnalysisCell analyse(const Canonical& c, std::size_t tau_bar, std::size_t grid) {
    const AugmentedSystem aug = build_augmented(c.weights, DelayAssignment::uniform(c.graph, tau_bar));
    AnalysisCell a;
    a.tau_bar = tau_bar;
    a.n_bar = aug.n_bar();
    const auto cc = derive_constants(aug, aggregate_constants(c.objectives), canonical::published_constants());
    a.sigma = cc.sigma;
    a.weighted_singular = weighted_singular_contraction(aug);
    a.bound = step_size_bound(cc);
    a.sweep = sweep_alpha(cc, log_spaced_grid(a.bound.alpha_bar, grid));
    return a;
}

std::string curve_detail(const Trace& t, double alpha, double tol) {
    std::string reached = "never";
    for (const auto& r : t.rows()) {
        if (r.residual <= tol) {
            reached = std::to_string(r.k);
            break;
        }
    }
    return "alpha=" + fmt(alpha) + "; final_residual=" + fmt(t.final_residual()) + "; first_k_below_tol=" + reached;
}

std::string trace_csv(const Trace& t) {
    std::ostringstream os;
    t.write_csv(os);
    return os.str();
}

PlotSpec residual_plot(const std::string& title, const std::vector<std::pair<std::string, const Trace*>>& traces) {
    PlotSpec p;
    p.title = title;
    p.x_label = "k";
    p.y_label = "residual";
    p.log_y = true;
    for (const auto& [name, t] : traces) {
        Series s;
        s.name = name;
        for (const auto& r : t->rows()) {
            s.x.push_back(static_cast<double>(r.k));
            s.y.push_back(r.residual);
        }
        p.series.push_back(std::move(s));
    }
    return p;
}

std::string svg_text(const PlotSpec& p) {
    std::ostringstream os;
    render_svg(os, p);
    return os.str();
}

}  // namespace

SuiteResult reproduce_paper_suite(const SuiteOptions& options) {
    const fs::path root(options.out_dir);
    fs::create_directories(root);
    const Canonical canon;

    std::set<std::size_t> all_bounds(options.delay_bounds.begin(), options.delay_bounds.end());
    all_bounds.insert(options.time_varying_bounds.begin(), options.time_varying_bounds.end());

    std::vector<ManifestEntry> manifest;
    bool any_failed = false;
    auto record = [&](const std::string& rel, const std::string& cell, bool ok, const std::string& detail) {
        manifest.push_back({rel, ok ? sha256_file((root / rel).string()) : "", cell, ok ? "ok" : "failed", detail});
        any_failed = any_failed || !ok;
    };

    // Stage 1: analysis per delay bound.
    std::map<std::size_t, std::future<AnalysisCell>> analysis_jobs;
    for (std::size_t t : all_bounds) {
        analysis_jobs.emplace(t, std::async(std::launch::async, [&canon, t, &options] {
                                  return analyse(canon, t, options.alpha_grid);
                              }));
    }
    std::map<std::size_t, AnalysisCell> analyses;
    for (auto& [t, job] : analysis_jobs) {
        const std::string cell = "analysis/tau_" + std::to_string(t);
        try {
            analyses.emplace(t, job.get());
            const auto& a = analyses.at(t);
            std::ostringstream csv;
            write_alpha_rho_csv(csv, a.sweep);
            const std::string rel = cell + "/alpha_rho.csv";
            write_file(root, rel, csv.str());
            record(rel, cell, true, "alpha_bar=" + fmt(a.bound.alpha_bar));
        } catch (const Error& e) {
            record(cell, cell, false, e.what());
        }
    }

    // Stage 2: residual curves.
    std::vector<std::pair<std::string, std::future<CellOutcome>>> runs;
    RunOptions ropts;
    ropts.max_iter = options.horizon;
    ropts.tol = std::nullopt;
    for (std::size_t t : options.delay_bounds) {
        if (!analyses.count(t)) continue;
        const double alpha = analyses.at(t).sweep.argmin_alpha;
        for (const char* engine : {"matrix", "mp"}) {
            const std::string cell = "fixed/tau_" + std::to_string(t) + "_" + engine;
            const bool matrix = std::string(engine) == "matrix";
            runs.emplace_back(cell, std::async(std::launch::async, [&, t, alpha, matrix, cell] {
                                  CellOutcome o;
                                  o.cell = cell;
                                  const DelayAssignment d = DelayAssignment::uniform(canon.graph, t);
                                  if (matrix) {
                                      const AugmentedSystem aug = build_augmented(canon.weights, d);
                                      o.trace = radd_opt_run_matrix(aug, canon.objectives, canon.x0, alpha,
                                                                    canon.x_star, ropts);
                                  } else {
                                      o.trace = radd_opt_run_message_passing(
                                          canon.graph, canon.weights, d, canon.objectives, canon.x0, alpha,
                                          Interpretation::own_w_once, canon.x_star, ropts);
                                  }
                                  o.detail = curve_detail(o.trace, alpha, options.tol);
                                  return o;
                              }));
        }
    }
    for (std::size_t t : options.time_varying_bounds) {
        if (!analyses.count(t)) continue;
        const double alpha = 0.9 * analyses.at(t).bound.alpha_bar;
        for (std::size_t s = 0; s < options.seed_count; ++s) {
            const std::uint64_t seed = options.base_seed + s;
            const std::string cell = "time_varying/tau_" + std::to_string(t) + "_seed_" + std::to_string(seed);
            runs.emplace_back(cell, std::async(std::launch::async, [&, t, alpha, seed, cell] {
                                  CellOutcome o;
                                  o.cell = cell;
                                  o.trace = radd_opt_run_message_passing(
                                      canon.graph, canon.weights, TimeVaryingDelaySampler(t, seed), canon.objectives,
                                      canon.x0, alpha, Interpretation::own_w_once, canon.x_star, ropts);
                                  o.trace.meta.seed = seed;
                                  o.detail = curve_detail(o.trace, alpha, options.tol);
                                  return o;
                              }));
        }
    }

    std::map<std::string, Trace> traces;
    for (auto& [cell, job] : runs) {
        try {
            CellOutcome o = job.get();
            const std::string rel = cell + "/trace.csv";
            write_file(root, rel, trace_csv(o.trace));
            record(rel, cell, true, o.detail);
            traces.emplace(cell, std::move(o.trace));
        } catch (const Error& e) {
            record(cell, cell, false, e.what());
        }
    }

    // Aggregates.
    {
        std::ostringstream os;
        os << "tau_bar,n_bar,sigma,weighted_singular_sigma,alpha_bar,argmin_alpha,min_rho\n";
        for (std::size_t t : options.delay_bounds) {
            if (!analyses.count(t)) continue;
            const auto& a = analyses.at(t);
            os << t << ',' << a.n_bar << ',' << fmt(a.sigma) << ',' << fmt(a.weighted_singular) << ','
               << fmt(a.bound.alpha_bar) << ',' << fmt(a.sweep.argmin_alpha) << ',' << fmt(a.sweep.min_rho) << '\n';
        }
        write_file(root, "sigma_table.csv", os.str());
        record("sigma_table.csv", "sigma_table", true, "");
    }
    {
        std::ostringstream os;
        os << "tau_bar,alpha,rho\n";
        for (const auto& [t, a] : analyses) {
            for (const auto& p : a.sweep.points) os << t << ',' << fmt(p.alpha) << ',' << fmt(p.rho) << '\n';
        }
        write_file(root, "rho_curves.csv", os.str());
        record("rho_curves.csv", "rho_curves", true, "");
    }
    if (options.svg) {
        PlotSpec rho;
        rho.title = "spectral radius of G(alpha)";
        rho.x_label = "alpha";
        rho.y_label = "rho";
        rho.log_x = true;
        for (const auto& [t, a] : analyses) {
            Series s;
            s.name = "tau_bar=" + std::to_string(t);
            for (const auto& p : a.sweep.points) {
                s.x.push_back(p.alpha);
                s.y.push_back(p.rho);
            }
            rho.series.push_back(std::move(s));
        }
        write_file(root, "plots/rho.svg", svg_text(rho));
        record("plots/rho.svg", "plots", true, "");

        for (const char* engine : {"matrix", "mp"}) {
            std::vector<std::pair<std::string, const Trace*>> series;
            for (std::size_t t : options.delay_bounds) {
                auto it = traces.find("fixed/tau_" + std::to_string(t) + "_" + engine);
                if (it != traces.end()) series.emplace_back("tau_bar=" + std::to_string(t), &it->second);
            }
            const std::string rel = std::string("plots/residual_fixed_") + engine + ".svg";
            write_file(root, rel, svg_text(residual_plot(std::string("residual, fixed delays, ") + engine, series)));
            record(rel, "plots", true, "");
        }
        for (std::size_t t : options.time_varying_bounds) {
            std::vector<std::pair<std::string, const Trace*>> series;
            for (std::size_t s = 0; s < options.seed_count; ++s) {
                const std::uint64_t seed = options.base_seed + s;
                auto it = traces.find("time_varying/tau_" + std::to_string(t) + "_seed_" + std::to_string(seed));
                if (it != traces.end()) series.emplace_back("seed " + std::to_string(seed), &it->second);
            }
            const std::string rel = "plots/residual_time_varying_tau_" + std::to_string(t) + ".svg";
            write_file(root, rel,
                       svg_text(residual_plot("residual, time-varying delays <= " + std::to_string(t), series)));
            record(rel, "plots", true, "");
        }
    }

    std::sort(manifest.begin(), manifest.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
    std::ostringstream os;
    os << "path,sha256,cell,status,detail\n";
    for (const auto& m : manifest) {
        os << m.path << ',' << m.sha256 << ',' << m.cell << ',' << m.status << ",\"" << m.detail << "\"\n";
    }
    write_file(root, "manifest.csv", os.str());

    SuiteResult res;
    res.exit_code = any_failed ? 4 : 0;
    res.manifest = std::move(manifest);
    return res;
}

}  // namespace raddopt
