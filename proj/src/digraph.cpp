#include "raddopt/digraph.hpp"

#include <sstream>

#include "raddopt/error.hpp"
#include "text_util.hpp"

namespace raddopt {

Digraph::Digraph(std::size_t node_count, std::vector<Edge> edges)
    : n_(node_count), edges_(std::move(edges)), out_(node_count), in_(node_count) {
    if (n_ == 0) throw StructuralError("digraph needs at least one node");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto [from, to] = edges_[e];
        if (from >= n_ || to >= n_) {
            throw StructuralError("edge " + std::to_string(from + 1) + "->" + std::to_string(to + 1) +
                                  " references a node outside 1.." + std::to_string(n_));
        }
        if (from == to) {
            throw StructuralError("self-loop on node " + std::to_string(from + 1) +
                                  " (self-loops are implicit)");
        }
        for (std::size_t other : out_[from]) {
            if (edges_[other].to == to) {
                throw StructuralError("duplicate edge " + std::to_string(from + 1) + "->" +
                                      std::to_string(to + 1));
            }
        }
        out_[from].push_back(e);
        in_[to].push_back(e);
    }
}

void Digraph::check_node(NodeId j) const {
    if (j >= n_) {
        throw StructuralError("node id " + std::to_string(j + 1) + " outside 1.." + std::to_string(n_));
    }
}

std::optional<std::size_t> Digraph::edge_index(NodeId from, NodeId to) const {
    check_node(from);
    check_node(to);
    for (std::size_t e : out_[from]) {
        if (edges_[e].to == to) return e;
    }
    return std::nullopt;
}

std::span<const std::size_t> Digraph::out_edges(NodeId j) const {
    check_node(j);
    return out_[j];
}

std::span<const std::size_t> Digraph::in_edges(NodeId j) const {
    check_node(j);
    return in_[j];
}

std::size_t Digraph::out_degree(NodeId j) const { return out_edges(j).size(); }
std::size_t Digraph::in_degree(NodeId j) const { return in_edges(j).size(); }

namespace {

// Nodes reachable from `root`, following edges forward or backward.
std::vector<bool> reachable(const Digraph& g, NodeId root, bool forward) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (std::size_t e : forward ? g.out_edges(v) : g.in_edges(v)) {
            NodeId u = forward ? g.edge(e).to : g.edge(e).from;
            if (!seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
        }
    }
    return seen;
}

}  // namespace

// Strongly connected iff node 0 reaches everyone and everyone reaches node 0.
std::optional<std::pair<NodeId, NodeId>> find_unreachable_pair(const Digraph& g) {
    if (g.node_count() == 0) return std::nullopt;
    auto fwd = reachable(g, 0, true);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!fwd[v]) return std::pair{NodeId{0}, v};
    }
    auto bwd = reachable(g, 0, false);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!bwd[v]) return std::pair{v, NodeId{0}};
    }
    return std::nullopt;
}

bool is_strongly_connected(const Digraph& g) { return !find_unreachable_pair(g).has_value(); }

WeightMatrix build_weight_matrix(const Digraph& g) {
    if (auto pair = find_unreachable_pair(g)) {
        throw DomainError("graph is not strongly connected: node " + std::to_string(pair->second + 1) +
                          " is unreachable from node " + std::to_string(pair->first + 1));
    }
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (NodeId j = 0; j < g.node_count(); ++j) {
        const double weight = 1.0 / (1.0 + static_cast<double>(g.out_degree(j)));
        p(j, j) = weight;
        for (std::size_t e : g.out_edges(j)) p(g.edge(e).to, j) = weight;
    }
    return WeightMatrix(std::move(p));
}

Digraph parse_graph(const std::string& text, const std::string& source) {
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;
    detail::for_each_record(text, [&](std::size_t line, const auto& tok) {
        if (tok[0] == "nodes") {
            if (n) throw InputError(source, line, "duplicate 'nodes' header");
            std::size_t value = 0;
            if (tok.size() != 2 || !detail::parse_int(tok[1], value) || value == 0) {
                throw InputError(source, line, "expected 'nodes <n>' with n >= 1");
            }
            n = value;
        } else if (tok[0] == "edge") {
            if (!n) throw InputError(source, line, "'edge' before 'nodes' header");
            std::size_t from = 0, to = 0;
            if (tok.size() != 3 || !detail::parse_int(tok[1], from) || !detail::parse_int(tok[2], to)) {
                throw InputError(source, line, "expected 'edge <from> <to>'");
            }
            if (from < 1 || from > *n || to < 1 || to > *n) {
                throw InputError(source, line, "node id outside 1.." + std::to_string(*n));
            }
            if (from == to) throw InputError(source, line, "self-loops are implicit and must not be listed");
            for (const auto& e : edges) {
                if (e.from == from - 1 && e.to == to - 1) throw InputError(source, line, "duplicate edge");
            }
            edges.push_back({from - 1, to - 1});
        } else {
            throw InputError(source, line, "unknown directive '" + std::string(tok[0]) + "'");
        }
    });
    if (!n) throw InputError(source, 0, "missing 'nodes <n>' header");
    return Digraph(*n, std::move(edges));
}

Digraph load_graph(const std::string& path) { return parse_graph(detail::read_file(path), path); }

std::string format_graph(const Digraph& g) {
    std::ostringstream os;
    os << "nodes " << g.node_count() << '\n';
    for (const auto& e : g.edges()) os << "edge " << e.from + 1 << ' ' << e.to + 1 << '\n';
    return os.str();
}

}  // namespace raddopt
