#include "raddopt/augmented.hpp"

#include <string>

#include "raddopt/error.hpp"

namespace raddopt {

std::vector<Eigen::MatrixXd> split_by_delay(const WeightMatrix& p, const DelayAssignment& d) {
    const Digraph& g = d.graph();
    if (p.size() != g.node_count()) {
        throw StructuralError("weight matrix is " + std::to_string(p.size()) + "x" + std::to_string(p.size()) +
                              " but the delay assignment covers " + std::to_string(g.node_count()) + " nodes");
    }
    const auto n = static_cast<Eigen::Index>(g.node_count());
    std::vector<Eigen::MatrixXd> parts(d.tau_bar() + 1, Eigen::MatrixXd::Zero(n, n));
    for (Eigen::Index j = 0; j < n; ++j) parts[0](j, j) = p(j, j);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto [from, to] = g.edge(e);
        parts[d.delay(e)](to, from) = p(to, from);
    }
    return parts;
}

std::optional<std::size_t> AugmentedSystem::index_of(NodeId node, std::size_t level) const {
    if (node >= lookup_.size() || level >= lookup_[node].size()) return std::nullopt;
    return lookup_[node][level];
}

const Eigen::VectorXd& AugmentedSystem::pi() const {
    if (!has_perron()) throw StructuralError("Perron vector is only computed for pruned augmented systems");
    return pi_;
}

Eigen::MatrixXd AugmentedSystem::xi_inf() const {
    const auto& v = pi();
    return v * Eigen::RowVectorXd::Ones(v.size());
}

std::size_t AugmentedSystem::link_count() const {
    std::size_t count = 0;
    for (Eigen::Index c = 0; c < xi_.cols(); ++c) {
        for (Eigen::Index r = 0; r < xi_.rows(); ++r) {
            if (r != c && xi_(r, c) != 0.0) ++count;
        }
    }
    return count;
}

std::size_t augmented_link_bound(const Digraph& g, std::size_t tau_bar) {
    return (1 + 2 * tau_bar) * g.edge_count();
}

PerronResult perron_vector(const Eigen::MatrixXd& a, const PerronOptions& options) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double residual = 0.0;
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        Eigen::VectorXd next = a * v;
        next /= next.sum();
        residual = (a * next - next).norm();
        v = std::move(next);
        if (residual <= options.tolerance) return {std::move(v), residual, it};
    }
    throw AnalysisError("Perron power iteration did not reach tolerance " + std::to_string(options.tolerance) +
                            " in " + std::to_string(options.max_iterations) + " iterations (residual " +
                            std::to_string(residual) + ")",
                        residual);
}

AugmentedSystem build_augmented(const WeightMatrix& p, const DelayAssignment& d, bool prune,
                                const PerronOptions& perron) {
    const Digraph& g = d.graph();
    auto parts = split_by_delay(p, d);  // validates dimensions
    if (auto pair = find_unreachable_pair(g)) {
        throw DomainError("augmentation needs a strongly connected graph: node " +
                          std::to_string(pair->second + 1) + " is unreachable from node " +
                          std::to_string(pair->first + 1));
    }

    AugmentedSystem aug;
    aug.n_ = g.node_count();
    aug.tau_bar_ = d.tau_bar();
    aug.pruned_ = prune;
    aug.lookup_.assign(aug.n_, std::vector<std::optional<std::size_t>>(aug.tau_bar_ + 1));

    for (std::size_t level = 0; level <= aug.tau_bar_; ++level) {
        for (NodeId j = 0; j < aug.n_; ++j) {
            const bool keep = level == 0 || !prune || level <= d.max_incoming_delay(j);
            if (!keep) continue;
            aug.lookup_[j][level] = aug.map_.size();
            aug.map_.push_back({j, level});
        }
    }

    const auto nb = static_cast<Eigen::Index>(aug.map_.size());
    aug.xi_ = Eigen::MatrixXd::Zero(nb, nb);
    // First block column: P^(r) routes actual node i's output to level r of node j.
    for (NodeId j = 0; j < aug.n_; ++j) aug.xi_(j, j) = parts[0](j, j);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto [from, to] = g.edge(e);
        const std::size_t target = *aug.lookup_[to][d.delay(e)];
        aug.xi_(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(from)) =
            parts[d.delay(e)](to, from);
    }
    // Identity chains: level r hands its content to level r - 1.
    for (std::size_t idx = aug.n_; idx < aug.map_.size(); ++idx) {
        const auto [node, level] = aug.map_[idx];
        const std::size_t below = *aug.lookup_[node][level - 1];
        aug.xi_(static_cast<Eigen::Index>(below), static_cast<Eigen::Index>(idx)) = 1.0;
    }

    if (prune) {
        auto result = perron_vector(aug.xi_, perron);
        if ((result.pi.array() <= 0.0).any()) {
            throw AnalysisError("Perron vector has non-positive entries; augmented graph is not primitive",
                                result.residual);
        }
        aug.pi_ = std::move(result.pi);
        aug.perron_residual_ = result.residual;
        aug.perron_iterations_ = result.iterations;
    }
    return aug;
}

}  // namespace raddopt
