#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace raddopt {

using NodeId = std::size_t;

// Directed link `from -> to`: node `to` receives what `from` transmits.
struct Edge {
    NodeId from = 0;
    NodeId to = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Communication topology. Node ids are 0-based; the text format is 1-based.
// Self-loops are implicit and never stored.
class Digraph {
public:
    Digraph() = default;

    // Throws StructuralError on self-loops, duplicates or out-of-range ids.
    Digraph(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t index) const { return edges_.at(index); }

    // Index of edge `from -> to` in edges(), if present.
    std::optional<std::size_t> edge_index(NodeId from, NodeId to) const;

    // Edge indices leaving / entering node j.
    std::span<const std::size_t> out_edges(NodeId j) const;
    std::span<const std::size_t> in_edges(NodeId j) const;

    // D_j^out: stored outgoing links, the implicit self-loop excluded.
    std::size_t out_degree(NodeId j) const;
    std::size_t in_degree(NodeId j) const;

private:
    void check_node(NodeId j) const;

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

bool is_strongly_connected(const Digraph& g);

// Some ordered pair (from, to) with `to` unreachable from `from`, or nullopt when
// the graph is strongly connected.
std::optional<std::pair<NodeId, NodeId>> find_unreachable_pair(const Digraph& g);

// Column-stochastic consensus weights P: p_lj = 1 / (1 + D_j^out) for l = j and
// every out-neighbour l of j, zero elsewhere.
class WeightMatrix {
public:
    std::size_t size() const noexcept { return static_cast<std::size_t>(p_.rows()); }
    double operator()(NodeId row, NodeId col) const { return p_(row, col); }
    const Eigen::MatrixXd& matrix() const noexcept { return p_; }

private:
    friend WeightMatrix build_weight_matrix(const Digraph& g);
    explicit WeightMatrix(Eigen::MatrixXd p) : p_(std::move(p)) {}

    Eigen::MatrixXd p_;
};

// Throws DomainError naming an unreachable pair (1-based) when g is not strongly connected.
WeightMatrix build_weight_matrix(const Digraph& g);

// Graph text format:
//   nodes <n>
//   edge <from> <to>        (1-based ids)
// '#' starts a comment line; blank lines are ignored.
Digraph parse_graph(const std::string& text, const std::string& source = "<graph>");
Digraph load_graph(const std::string& path);
std::string format_graph(const Digraph& g);

}  // namespace raddopt
