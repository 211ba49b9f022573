#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "raddopt/delays.hpp"
#include "raddopt/digraph.hpp"
#include "raddopt/objectives.hpp"
#include "raddopt/trace.hpp"

namespace raddopt {

// How the node-level x-update treats the gradient-tracking variable w.
//
//   literal            x+ = sum_{i in N_j + j} (p_ji x_i[k-tau] - a w_i[k-tau]) - a w_j[k]
//   own_w_once         x+ = sum_{i in N_j + j} p_ji x_i[k-tau] - a w_j[k]
//   matrix_consistent  as own_w_once, but every in-flight x payload also loses a times the
//                      in-flight w one step closer to arrival, reproducing the virtual-node
//                      bookkeeping of the augmented matrix iteration exactly.
//
// y and w follow the same delayed push-sum update under all three.
enum class Interpretation { literal, own_w_once, matrix_consistent };

std::string_view to_string(Interpretation i) noexcept;
Interpretation parse_interpretation(std::string_view s);  // throws DomainError

using DelaySource = std::variant<DelayAssignment, TimeVaryingDelaySampler>;

std::string describe(const DelaySource& source);

// Contributions travelling on one link. raw_w is the unweighted sender w, needed only
// by the literal interpretation.
struct Payload {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double raw_w = 0.0;

    Payload& operator+=(const Payload& o) noexcept {
        x += o.x;
        y += o.y;
        w += o.w;
        raw_w += o.raw_w;
        return *this;
    }
};

// Pending arrivals keyed by the step whose update consumes them.
class Inbox {
public:
    explicit Inbox(std::size_t horizon = 1) : slots_(horizon + 1), steps_(horizon + 1, kEmpty) {}

    void deliver(std::uint64_t consume_step, const Payload& p);
    Payload take(std::uint64_t consume_step);
    // Payload scheduled for `consume_step`, or zero if none.
    Payload peek(std::uint64_t consume_step) const;
    void add_x(std::uint64_t consume_step, double dx);

    // Sum of all pending payloads.
    Payload pending() const;
    std::size_t horizon() const noexcept { return slots_.size() - 1; }

private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
    std::size_t slot(std::uint64_t step) const noexcept { return step % slots_.size(); }
    Payload& claim(std::uint64_t step);

    std::vector<Payload> slots_;
    std::vector<std::uint64_t> steps_;
};

struct NodeState {
    double x = 0.0;
    double y = 1.0;
    double z = 0.0;
    double w = 0.0;
    Inbox inbox;
};

// Synchronous round-based R-ADD-OPT: every node transmits at step k, and a message on a
// link with delay tau feeds the update that produces state k + 1 + tau.
//
// An empty ObjectiveSet means zero gradients, so with alpha = 0 the engine is the
// delayed ratio-consensus protocol.
class MessagePassingEngine {
public:
    MessagePassingEngine(Digraph graph, const WeightMatrix& weights, DelaySource delays,
                         ObjectiveSet objectives, std::span<const double> x0, double alpha,
                         Interpretation interpretation);

    void step();

    std::uint64_t k() const noexcept { return k_; }
    const std::vector<NodeState>& states() const noexcept { return nodes_; }
    std::vector<double> z() const;

    // Totals over node states plus everything still in flight.
    double total_y() const;
    double total_w() const;

    double gradient(NodeId j, double z) const;

private:
    std::size_t link_delay(std::size_t edge, std::uint64_t step) const;

    Digraph graph_;
    Eigen::MatrixXd p_;
    DelaySource delays_;
    ObjectiveSet objectives_;
    double alpha_;
    Interpretation interpretation_;
    std::vector<NodeState> nodes_;
    std::uint64_t k_ = 0;
};

// Delayed ratio consensus; x_star in the trace is the average of x0.
Trace ratio_consensus_run(const Digraph& graph, const WeightMatrix& weights, const DelaySource& delays,
                          std::span<const double> x0, const RunOptions& options = {});

Trace radd_opt_run_message_passing(const Digraph& graph, const WeightMatrix& weights,
                                   const DelaySource& delays, const ObjectiveSet& objectives,
                                   std::span<const double> x0, double alpha, Interpretation interpretation,
                                   double x_star, const RunOptions& options = {});

}  // namespace raddopt
