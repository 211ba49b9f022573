#include "raddopt/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "raddopt/error.hpp"
#include "text_util.hpp"

namespace raddopt {

QuadraticObjective::QuadraticObjective(double beta, double phi) : beta_(beta), phi_(phi) {
    if (!std::isfinite(beta) || !std::isfinite(phi)) throw DomainError("quadratic objective needs finite beta, phi");
    if (!(beta > 0.0)) throw DomainError("quadratic objective needs beta > 0, got " + std::to_string(beta));
}

ObjectiveSet make_quadratic_set(std::span<const double> betas, std::span<const double> phis) {
    if (betas.size() != phis.size()) throw StructuralError("beta and phi lengths differ");
    ObjectiveSet set;
    set.reserve(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        set.push_back(std::make_shared<QuadraticObjective>(betas[i], phis[i]));
    }
    return set;
}

double closed_form_minimizer(std::span<const QuadraticObjective> objectives) {
    if (objectives.empty()) throw DomainError("minimizer of an empty objective set is undefined");
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& f : objectives) {
        weighted += f.beta() * f.phi();
        total += f.beta();
    }
    return weighted / total;
}

CurvatureConstants aggregate_constants(const ObjectiveSet& objectives) {
    if (objectives.empty()) throw DomainError("constants of an empty objective set are undefined");
    CurvatureConstants c{objectives.front()->lipschitz(), objectives.front()->strong_convexity()};
    for (const auto& f : objectives) {
        c.lipschitz = std::max(c.lipschitz, f->lipschitz());
        c.strong_convexity = std::min(c.strong_convexity, f->strong_convexity());
    }
    return c;
}

std::vector<QuadraticObjective> parse_quadratics(const std::string& text, std::size_t node_count,
                                                 const std::string& source) {
    std::vector<std::optional<QuadraticObjective>> slots(node_count);
    detail::for_each_record(text, [&](std::size_t line, const auto& tok) {
        if (tok[0] != "quad") throw InputError(source, line, "unknown directive '" + std::string(tok[0]) + "'");
        std::size_t node = 0;
        double beta = 0.0, phi = 0.0;
        if (tok.size() != 4 || !detail::parse_int(tok[1], node) || !detail::parse_double(tok[2], beta) ||
            !detail::parse_double(tok[3], phi)) {
            throw InputError(source, line, "expected 'quad <node-id> <beta> <phi>'");
        }
        if (node < 1 || node > node_count) {
            throw InputError(source, line, "node id outside 1.." + std::to_string(node_count));
        }
        if (slots[node - 1]) throw InputError(source, line, "duplicate objective for node " + std::to_string(node));
        try {
            slots[node - 1].emplace(beta, phi);
        } catch (const DomainError& e) {
            throw InputError(source, line, e.what());
        }
    });
    std::vector<QuadraticObjective> out;
    out.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) {
        if (!slots[i]) throw InputError(source, 0, "missing objective for node " + std::to_string(i + 1));
        out.push_back(*slots[i]);
    }
    return out;
}

std::vector<QuadraticObjective> load_quadratics(const std::string& path, std::size_t node_count) {
    return parse_quadratics(detail::read_file(path), node_count, path);
}

ObjectiveSet to_objective_set(std::span<const QuadraticObjective> quadratics) {
    ObjectiveSet set;
    set.reserve(quadratics.size());
    for (const auto& q : quadratics) set.push_back(std::make_shared<QuadraticObjective>(q));
    return set;
}

}  // namespace raddopt
