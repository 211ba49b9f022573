#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "raddopt/config.hpp"
#include "raddopt/error.hpp"
#include "raddopt/experiment.hpp"
#include "raddopt/suite.hpp"
#include "raddopt/svg.hpp"

using namespace raddopt;
namespace fs = std::filesystem;

namespace {

const std::string kData = RADDOPT_DATA_DIR;

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("raddopt_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunConfig canonical_config(const std::string& extra, const fs::path& out) {
    std::string text = "graph = canonical/graph.txt\nobjectives = canonical/objectives.txt\n" + extra +
                       "c = 1\nd = 1\nL = 1\nmu = 0.1\ny = 1.67\ny_tilde = 3\nepsilon = 1.1\nxi = 1.13\n";
    auto cfg = parse_config(text, kData);
    cfg.out_dir = out.string();
    return cfg;
}

std::size_t error_line(const std::string& text) {
    try {
        (void)parse_config(text, kData, "cfg");
    } catch (const InputError& e) {
        return e.line();
    }
    return 999;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_config(
        "# comment\ngraph = g.txt\nobjectives = o.txt   # trailing\ndelays = d.txt\nalgorithm = radd-opt-matrix\n"
        "alpha = 0.01\nmax_iter = 10\ntol = 1e-6\nmu = 0.1\nseed = 7\n",
        "/base");
    CHECK(cfg.graph_path == "/base/g.txt");
    CHECK(cfg.delays_path == "/base/d.txt");
    CHECK(cfg.delay_mode == DelayMode::fixed);
    CHECK(cfg.algorithm == Algorithm::radd_opt_matrix);
    CHECK(cfg.alpha.kind == AlphaChoice::Kind::fixed);
    CHECK(cfg.alpha.value == 0.01);
    CHECK(cfg.max_iter == 10);
    CHECK(cfg.tol == 1e-6);
    CHECK(*cfg.overrides.strong_convexity == 0.1);
    CHECK(cfg.seed == 7);

    const auto tv = parse_config("graph = g\nobjectives = o\ndelay_mode = time-varying\ndelay_bound = 3\n"
                                 "alpha = auto-half-bar\n");
    CHECK(tv.delay_mode == DelayMode::time_varying);
    CHECK(tv.delay_bound == 3);
    CHECK(tv.alpha.kind == AlphaChoice::Kind::auto_half_bar);
    CHECK(parse_config("graph = g\nobjectives = o\ndelay_bound = 2\n").delay_mode == DelayMode::uniform);
    CHECK_NOTHROW(parse_config("graph = g\nobjectives = o\nalgorithm = add-opt\n"));
}

TEST_CASE("config errors carry line numbers") {
    CHECK(error_line("graph = g\nobjectives = o\ndelay_bound = 1\ncolour = red\n") == 4);
    CHECK(error_line("graph = g\ngraph = h\n") == 2);
    CHECK(error_line("graph g\n") == 1);
    CHECK(error_line("graph = g\ntol = 0\n") == 2);
    CHECK(error_line("graph = g\ntol = -1\n") == 2);
    CHECK(error_line("graph = g\nalpha = fast\n") == 2);
    CHECK(error_line("graph = g\nalgorithm = dgd\n") == 2);
    CHECK(error_line("graph = g\ninterpretation = eq4\n") == 2);
    CHECK(error_line("graph = g\nobjectives = o\ndelays = d\ndelay_bound = 2\n") == 4);
    CHECK(error_line("graph = g\nobjectives = o\n") == 0);  // no delay source
    CHECK(error_line("objectives = o\ndelay_bound = 1\n") == 0);
    CHECK(error_line("graph = g\nobjectives = o\ndelay_mode = time-varying\ndelay_bound = 2\n"
                     "algorithm = radd-opt-matrix\n") == 3);
}

TEST_CASE("run_experiment converges on the delay-free example") {
    const auto out = scratch("tau0");
    const auto cfg = canonical_config("delays = canonical/delays_tau0.txt\nalpha = auto-min-rho\n", out);
    const auto res = run_experiment(cfg);
    CHECK(res.exit_code == kExitConverged);
    REQUIRE(res.trace);
    CHECK(res.trace->final_residual() <= 1e-10);
    CHECK(fs::exists(out / "trace.csv"));
    CHECK(fs::exists(out / "summary.txt"));
    CHECK(fs::exists(out / "alpha_rho.csv"));
    CHECK(slurp(out / "summary.txt").find("exit_code = 0") != std::string::npos);
}

TEST_CASE("run_experiment divergence guard") {
    const auto out = scratch("diverge");
    auto cfg = canonical_config("delays = canonical/delays_tau0.txt\n", out);
    const auto probe = run_experiment(cfg);
    REQUIRE(probe.analysis);
    cfg.alpha = {AlphaChoice::Kind::fixed, 100.0 * probe.analysis->bound.alpha_bar};
    const auto res = run_experiment(cfg);
    CHECK(res.exit_code == kExitDiverged);
    CHECK(res.message.find("divergence") != std::string::npos);
}

TEST_CASE("run_experiment ratio consensus") {
    const auto out = scratch("rc");
    auto cfg = parse_config("graph = canonical/graph.txt\nx0 = 4 1 5 2 3\ndelays = canonical/delays_mixed.txt\n"
                            "algorithm = ratio-consensus\n",
                            kData);
    cfg.out_dir = out.string();
    const auto res = run_experiment(cfg);
    CHECK(res.exit_code == kExitConverged);
    for (double z : res.trace->rows().back().z) CHECK(std::abs(z - 3.0) <= 1e-4);
}

TEST_CASE("run_experiment reports non-convergence") {
    const auto out = scratch("slow");
    auto cfg = canonical_config("delays = canonical/delays_tau2.txt\nmax_iter = 50\n", out);
    CHECK(run_experiment(cfg).exit_code == kExitNotConverged);
}

TEST_CASE("run_experiment input errors") {
    const auto out = scratch("bad");
    fs::create_directories(out);
    std::ofstream(out / "graph.txt") << "nodes 3\nedge 1 2\nedge 2 9\n";
    auto cfg = parse_config("graph = graph.txt\nobjectives = " + kData + "/canonical/objectives.txt\ndelay_bound = 0\n",
                            out.string());
    cfg.out_dir = (out / "o").string();
    const auto res = run_experiment(cfg);
    CHECK(res.exit_code == kExitInputError);
    CHECK(res.message.find("graph.txt:3") != std::string::npos);

    cfg.graph_path = (out / "missing.txt").string();
    CHECK(run_experiment(cfg).exit_code == kExitInputError);
}

TEST_CASE("reruns are byte-identical") {
    const auto a = scratch("rerun_a"), b = scratch("rerun_b");
    auto cfg = canonical_config("delay_mode = time-varying\ndelay_bound = 2\nseed = 5\nmax_iter = 300\n", a);
    run_experiment(cfg, true);
    cfg.out_dir = b.string();
    run_experiment(cfg, true);
    for (const char* f : {"trace.csv", "alpha_rho.csv", "summary.txt", "residual.svg"}) {
        CHECK(slurp(a / f) == slurp(b / f));
        CHECK_FALSE(slurp(a / f).empty());
    }
    CHECK(slurp(a / "summary.txt").find("conjecture_mode = true") != std::string::npos);
}

TEST_CASE("analysis and sweep") {
    const auto out = scratch("sweep");
    const auto cfg = canonical_config("delays = canonical/delays_tau2.txt\n", out);
    const auto res = run_analysis(cfg, 17);
    CHECK(res.exit_code == 0);
    REQUIRE(res.analysis);
    CHECK(res.analysis->sweep.points.size() == 17);
    CHECK(res.analysis->n_bar == 15);
    std::istringstream csv(slurp(out / "alpha_rho.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 18);
}

TEST_CASE("sha256") {
    const auto dir = scratch("sha");
    std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
    CHECK(sha256_file((dir / "abc.txt").string()) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("reproduce suite writes a complete manifest") {
    SuiteOptions opts;
    opts.out_dir = scratch("suite_a").string();
    opts.delay_bounds = {0, 2};
    opts.time_varying_bounds = {2};
    opts.seed_count = 2;
    opts.horizon = 300;
    opts.alpha_grid = 50;
    opts.svg = true;
    const auto res = reproduce_paper_suite(opts);
    CHECK(res.exit_code == 0);

    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(opts.out_dir)) {
        if (!e.is_regular_file() || e.path().filename() == "manifest.csv") continue;
        ++files;
        const auto rel = fs::relative(e.path(), opts.out_dir).string();
        bool listed = false;
        for (const auto& m : res.manifest) {
            if (m.path == rel) {
                listed = true;
                CHECK(m.sha256 == sha256_file(e.path().string()));
                CHECK(m.status == "ok");
            }
        }
        CHECK_MESSAGE(listed, rel);
    }
    CHECK(files == res.manifest.size());
    CHECK(files == 2 + 2 + 4 + 2 + 4);  // tables, alpha-rho per tau, fixed runs, ensemble, plots

    auto again = opts;
    again.out_dir = scratch("suite_b").string();
    reproduce_paper_suite(again);
    CHECK(slurp(fs::path(opts.out_dir) / "manifest.csv") == slurp(fs::path(again.out_dir) / "manifest.csv"));

    std::istringstream table(slurp(fs::path(opts.out_dir) / "sigma_table.csv"));
    std::string header, row0, row2;
    std::getline(table, header);
    std::getline(table, row0);
    std::getline(table, row2);
    CHECK(row0.rfind("0,5,0.5999", 0) == 0);
    CHECK(row2.rfind("2,15,0.877", 0) == 0);
}

TEST_CASE("svg renderer") {
    PlotSpec p;
    p.title = "a < b";
    p.log_y = true;
    p.series.push_back({"s", {0, 1, 2, 3}, {1.0, 0.1, 0.0, 0.001}});
    std::ostringstream os;
    render_svg(os, p);
    const std::string s = os.str();
    CHECK(s.rfind("<svg", 0) == 0);
    CHECK(s.find("a &lt; b") != std::string::npos);
    CHECK(s.find("<polyline") != std::string::npos);
    CHECK(s.find("nan") == std::string::npos);
}
