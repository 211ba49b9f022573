#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raddopt/analysis.hpp"
#include "raddopt/message_passing.hpp"

namespace raddopt {

enum class Algorithm { radd_opt_mp, radd_opt_matrix, add_opt, ratio_consensus };
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

enum class DelayMode { fixed, uniform, time_varying };
std::string to_string(DelayMode m);

// How the step-size is chosen: a number, the argmin of rho(G_alpha) over a log grid in
// (0, alpha_bar), or alpha_bar / 2.
struct AlphaChoice {
    enum class Kind { fixed, auto_min_rho, auto_half_bar } kind = Kind::auto_min_rho;
    double value = 0.0;
};

// Experiment configuration, read from `key = value` lines. Paths are resolved relative
// to the config file's directory.
struct RunConfig {
    std::string graph_path;
    std::string objectives_path;
    std::optional<std::vector<double>> x0;  // defaults to the objectives' phi

    DelayMode delay_mode = DelayMode::fixed;
    std::string delays_path;      // fixed
    std::size_t delay_bound = 0;  // uniform and time-varying
    std::uint64_t seed = 1;

    Algorithm algorithm = Algorithm::radd_opt_mp;
    Interpretation interpretation = Interpretation::own_w_once;
    AlphaChoice alpha;
    std::size_t alpha_grid = 200;
    double alpha_grid_decades = 3.0;
    std::size_t max_iter = 5000;
    double tol = 1e-10;
    std::string out_dir = "out";
    bool prune = true;
    SigmaMethod sigma_method = SigmaMethod::second_eigenvalue;
    ConstantOverrides overrides;
};

// Throws InputError (with the offending line) on unknown keys, malformed values, or a
// missing / duplicated delay source.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".",
                       const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

}  // namespace raddopt
