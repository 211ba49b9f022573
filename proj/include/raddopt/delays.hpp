#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "raddopt/digraph.hpp"

namespace raddopt {

// Time-invariant delay (in steps) on every edge of a digraph. The implicit
// self-loop always has delay 0.
class DelayAssignment {
public:
    // One delay per edge, in Digraph::edges() order.
    DelayAssignment(Digraph graph, std::vector<std::size_t> per_edge);

    // Every edge delayed by exactly `tau`.
    static DelayAssignment uniform(const Digraph& graph, std::size_t tau);
    static DelayAssignment zero(const Digraph& graph) { return uniform(graph, 0); }

    const Digraph& graph() const noexcept { return graph_; }
    std::size_t delay(std::size_t edge_index) const { return delays_.at(edge_index); }
    const std::vector<std::size_t>& per_edge() const noexcept { return delays_; }

    // Largest delay on any edge; 0 for an edgeless graph.
    std::size_t tau_bar() const noexcept { return tau_bar_; }

    // Largest delay among the links entering node j (0 when none).
    std::size_t max_incoming_delay(NodeId j) const;

private:
    Digraph graph_;
    std::vector<std::size_t> delays_;
    std::size_t tau_bar_ = 0;
};

// Delay file format:
//   tau_bar <value>           (optional, must dominate every listed delay)
//   delay <from> <to> <tau>   (1-based ids; unlisted edges get delay 0)
DelayAssignment parse_delays(const std::string& text, const Digraph& graph,
                             const std::string& source = "<delays>");
DelayAssignment load_delays(const std::string& path, const Digraph& graph);
std::string format_delays(const DelayAssignment& d);

// Random delays for the time-varying experiments: each edge independently draws a
// delay uniform on {0, ..., tau_star_bar} at every step. Counter-based, so the value
// for (seed, step, edge) does not depend on call order.
class TimeVaryingDelaySampler {
public:
    TimeVaryingDelaySampler(std::size_t tau_star_bar, std::uint64_t seed)
        : bound_(tau_star_bar), seed_(seed) {}

    std::size_t tau_star_bar() const noexcept { return bound_; }
    std::uint64_t seed() const noexcept { return seed_; }

    std::size_t sample(std::uint64_t step, std::size_t edge_index) const noexcept;
    std::vector<std::size_t> sample_all(std::uint64_t step, std::size_t edge_count) const;

private:
    std::size_t bound_;
    std::uint64_t seed_;
};

}  // namespace raddopt
