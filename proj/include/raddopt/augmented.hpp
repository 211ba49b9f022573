#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "raddopt/delays.hpp"
#include "raddopt/digraph.hpp"

namespace raddopt {

// Splits P by link delay: P^(r)(j,i) = P(j,i) when the edge i->j has delay r, and the
// diagonal goes to P^(0). The returned vector has tau_bar + 1 entries and sums to P.
std::vector<Eigen::MatrixXd> split_by_delay(const WeightMatrix& p, const DelayAssignment& d);

// Position of an augmented node: actual node j is (j, 0); virtual node v_j^(r) holds
// what arrives at j in r steps.
struct AugmentedNode {
    NodeId node = 0;
    std::size_t level = 0;
};

struct PerronOptions {
    double tolerance = 1e-12;
    std::size_t max_iterations = 1'000'000;
};

// Delay-free linear system on actual + virtual nodes. Indices are level-major:
// the n actual nodes first, then the kept level-1 virtual nodes, and so on.
//
// Pruned systems keep v_j^(r) only when some link entering j has delay >= r, so
// every kept node has inflow and the augmented graph is strongly connected. The
// Perron vector is computed for pruned systems only.
class AugmentedSystem {
public:
    const Eigen::MatrixXd& xi() const noexcept { return xi_; }
    std::size_t n_bar() const noexcept { return map_.size(); }
    std::size_t actual_count() const noexcept { return n_; }
    std::size_t tau_bar() const noexcept { return tau_bar_; }
    bool pruned() const noexcept { return pruned_; }

    const std::vector<AugmentedNode>& index_map() const noexcept { return map_; }
    std::optional<std::size_t> index_of(NodeId node, std::size_t level) const;

    bool has_perron() const noexcept { return pi_.size() > 0; }
    // Perron vector: Xi pi = pi, 1^T pi = 1, pi > 0. Throws StructuralError when unavailable.
    const Eigen::VectorXd& pi() const;
    double perron_residual() const noexcept { return perron_residual_; }
    std::size_t perron_iterations() const noexcept { return perron_iterations_; }

    // Xi_inf = pi 1^T, the limit of Xi^k.
    Eigen::MatrixXd xi_inf() const;

    // Off-diagonal nonzeros of Xi (augmented links, self-loops excluded).
    std::size_t link_count() const;

private:
    friend AugmentedSystem build_augmented(const WeightMatrix&, const DelayAssignment&, bool,
                                           const PerronOptions&);

    Eigen::MatrixXd xi_;
    std::vector<AugmentedNode> map_;
    std::vector<std::vector<std::optional<std::size_t>>> lookup_;  // [node][level]
    std::size_t n_ = 0;
    std::size_t tau_bar_ = 0;
    bool pruned_ = true;
    Eigen::VectorXd pi_;
    double perron_residual_ = 0.0;
    std::size_t perron_iterations_ = 0;
};

// Throws DomainError when the graph is not strongly connected and AnalysisError when
// the Perron power iteration misses its tolerance.
AugmentedSystem build_augmented(const WeightMatrix& p, const DelayAssignment& d, bool prune = true,
                                const PerronOptions& perron = {});

// Upper bound (1 + 2 tau_bar)|E| on the number of links in an augmented digraph.
std::size_t augmented_link_bound(const Digraph& g, std::size_t tau_bar);

// Power iteration for the Perron vector of a column-stochastic primitive matrix.
// Returns {pi, residual, iterations}; throws AnalysisError on non-convergence.
struct PerronResult {
    Eigen::VectorXd pi;
    double residual = 0.0;
    std::size_t iterations = 0;
};
PerronResult perron_vector(const Eigen::MatrixXd& a, const PerronOptions& options = {});

}  // namespace raddopt
