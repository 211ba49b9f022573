#include "raddopt/config.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "raddopt/error.hpp"
#include "text_util.hpp"

namespace raddopt {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::radd_opt_mp: return "radd-opt-mp";
        case Algorithm::radd_opt_matrix: return "radd-opt-matrix";
        case Algorithm::add_opt: return "add-opt";
        case Algorithm::ratio_consensus: return "ratio-consensus";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& s) {
    if (s == "radd-opt-mp") return Algorithm::radd_opt_mp;
    if (s == "radd-opt-matrix") return Algorithm::radd_opt_matrix;
    if (s == "add-opt") return Algorithm::add_opt;
    if (s == "ratio-consensus") return Algorithm::ratio_consensus;
    throw DomainError("unknown algorithm '" + s + "'");
}

std::string to_string(DelayMode m) {
    switch (m) {
        case DelayMode::fixed: return "fixed";
        case DelayMode::uniform: return "uniform";
        case DelayMode::time_varying: return "time-varying";
    }
    return "?";
}

namespace {

std::string resolve(const std::string& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_absolute()) return p;
    return (std::filesystem::path(base) / path).lexically_normal().string();
}

double positive(const std::string& v, const std::string& source, std::size_t line, const std::string& key) {
    double d = 0.0;
    if (!detail::parse_double(v, d) || !std::isfinite(d) || d <= 0.0) {
        throw InputError(source, line, key + " must be a positive number, got '" + v + "'");
    }
    return d;
}

template <typename Int>
Int integer(const std::string& v, const std::string& source, std::size_t line, const std::string& key) {
    Int out{};
    if (!detail::parse_int(v, out)) {
        throw InputError(source, line, key + " must be a non-negative integer, got '" + v + "'");
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& base_dir, const std::string& source) {
    RunConfig cfg;
    std::map<std::string, std::size_t> seen;
    std::optional<DelayMode> mode;
    bool has_bound = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        ++line_no;
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InputError(source, line_no, "expected 'key = value'");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key.empty() || value.empty()) throw InputError(source, line_no, "expected 'key = value'");
        if (auto [it, fresh] = seen.emplace(key, line_no); !fresh) {
            throw InputError(source, line_no,
                             "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
        }

        try {
            if (key == "graph") {
                cfg.graph_path = resolve(base_dir, value);
            } else if (key == "objectives") {
                cfg.objectives_path = resolve(base_dir, value);
            } else if (key == "x0") {
                std::vector<double> xs;
                for (auto tok : detail::split_ws(value)) {
                    double d = 0.0;
                    if (!detail::parse_double(tok, d) || !std::isfinite(d)) {
                        throw InputError(source, line_no, "x0 entry '" + std::string(tok) + "' is not a number");
                    }
                    xs.push_back(d);
                }
                cfg.x0 = std::move(xs);
            } else if (key == "delays") {
                cfg.delays_path = resolve(base_dir, value);
            } else if (key == "delay_mode") {
                if (value == "fixed") mode = DelayMode::fixed;
                else if (value == "uniform") mode = DelayMode::uniform;
                else if (value == "time-varying") mode = DelayMode::time_varying;
                else throw InputError(source, line_no, "delay_mode must be fixed, uniform or time-varying");
            } else if (key == "delay_bound") {
                cfg.delay_bound = integer<std::size_t>(value, source, line_no, key);
                has_bound = true;
            } else if (key == "seed") {
                cfg.seed = integer<std::uint64_t>(value, source, line_no, key);
            } else if (key == "algorithm") {
                cfg.algorithm = parse_algorithm(value);
            } else if (key == "interpretation") {
                cfg.interpretation = parse_interpretation(value);
            } else if (key == "alpha") {
                if (value == "auto-min-rho") {
                    cfg.alpha = {AlphaChoice::Kind::auto_min_rho, 0.0};
                } else if (value == "auto-half-bar") {
                    cfg.alpha = {AlphaChoice::Kind::auto_half_bar, 0.0};
                } else {
                    cfg.alpha = {AlphaChoice::Kind::fixed, positive(value, source, line_no, key)};
                }
            } else if (key == "alpha_grid") {
                cfg.alpha_grid = integer<std::size_t>(value, source, line_no, key);
                if (cfg.alpha_grid == 0) throw InputError(source, line_no, "alpha_grid must be at least 1");
            } else if (key == "alpha_grid_decades") {
                cfg.alpha_grid_decades = positive(value, source, line_no, key);
            } else if (key == "max_iter") {
                cfg.max_iter = integer<std::size_t>(value, source, line_no, key);
            } else if (key == "tol") {
                cfg.tol = positive(value, source, line_no, key);
            } else if (key == "out_dir") {
                cfg.out_dir = resolve(base_dir, value);
            } else if (key == "prune") {
                if (value == "true") cfg.prune = true;
                else if (value == "false") cfg.prune = false;
                else throw InputError(source, line_no, "prune must be true or false");
            } else if (key == "sigma_method") {
                cfg.sigma_method = parse_sigma_method(value);
            } else if (key == "c") {
                cfg.overrides.c = positive(value, source, line_no, key);
            } else if (key == "d") {
                cfg.overrides.d = positive(value, source, line_no, key);
            } else if (key == "L") {
                cfg.overrides.lipschitz = positive(value, source, line_no, key);
            } else if (key == "mu") {
                cfg.overrides.strong_convexity = positive(value, source, line_no, key);
            } else if (key == "y") {
                cfg.overrides.y_sup = positive(value, source, line_no, key);
            } else if (key == "y_tilde") {
                cfg.overrides.y_tilde = positive(value, source, line_no, key);
            } else if (key == "epsilon") {
                cfg.overrides.epsilon = positive(value, source, line_no, key);
            } else if (key == "xi") {
                cfg.overrides.xi_norm = positive(value, source, line_no, key);
            } else if (key == "sigma") {
                cfg.overrides.sigma = positive(value, source, line_no, key);
            } else {
                throw InputError(source, line_no, "unknown key '" + key + "'");
            }
        } catch (const DomainError& e) {
            throw InputError(source, line_no, e.what());
        }
        if (end == text.size()) break;
    }

    if (cfg.graph_path.empty()) throw InputError(source, 0, "missing required key 'graph'");
    if (cfg.objectives_path.empty() && !cfg.x0) {
        throw InputError(source, 0, "either 'objectives' or 'x0' is required");
    }
    if (cfg.objectives_path.empty() && cfg.algorithm != Algorithm::ratio_consensus) {
        throw InputError(source, 0, "'objectives' is required for " + to_string(cfg.algorithm));
    }

    const bool has_file = !cfg.delays_path.empty();
    if (has_file && has_bound) {
        throw InputError(source, seen.at("delay_bound"), "give either 'delays' or 'delay_bound', not both");
    }
    if (has_file) {
        if (mode && *mode != DelayMode::fixed) {
            throw InputError(source, seen.at("delay_mode"), "a delay file requires delay_mode = fixed");
        }
        cfg.delay_mode = DelayMode::fixed;
    } else if (has_bound) {
        if (mode == DelayMode::fixed) {
            throw InputError(source, seen.at("delay_mode"), "delay_mode = fixed requires a 'delays' file");
        }
        cfg.delay_mode = mode.value_or(DelayMode::uniform);
    } else if (cfg.algorithm == Algorithm::add_opt) {
        cfg.delay_mode = DelayMode::uniform;
        cfg.delay_bound = 0;
    } else {
        throw InputError(source, 0, "no delay source: set 'delays' or 'delay_bound'");
    }
    if (cfg.algorithm == Algorithm::radd_opt_matrix && cfg.delay_mode == DelayMode::time_varying) {
        throw InputError(source, seen.at("delay_mode"),
                         "radd-opt-matrix needs fixed delays; use radd-opt-mp for time-varying");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    const auto base = std::filesystem::path(path).parent_path().string();
    return parse_config(detail::read_file(path), base.empty() ? "." : base, path);
}

}  // namespace raddopt
