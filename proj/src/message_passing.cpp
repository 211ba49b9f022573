#include "raddopt/message_passing.hpp"

#include <cmath>
#include <numeric>

#include "raddopt/error.hpp"

namespace raddopt {

std::string_view to_string(Interpretation i) noexcept {
    switch (i) {
        case Interpretation::literal: return "literal";
        case Interpretation::own_w_once: return "own-w-once";
        case Interpretation::matrix_consistent: return "matrix-consistent";
    }
    return "?";
}

Interpretation parse_interpretation(std::string_view s) {
    if (s == "literal") return Interpretation::literal;
    if (s == "own-w-once") return Interpretation::own_w_once;
    if (s == "matrix-consistent") return Interpretation::matrix_consistent;
    throw DomainError("unknown interpretation '" + std::string(s) +
                      "' (expected literal, own-w-once or matrix-consistent)");
}

std::string describe(const DelaySource& source) {
    if (const auto* fixed = std::get_if<DelayAssignment>(&source)) {
        return "fixed(tau_bar=" + std::to_string(fixed->tau_bar()) + ")";
    }
    const auto& tv = std::get<TimeVaryingDelaySampler>(source);
    return "time-varying(tau_star_bar=" + std::to_string(tv.tau_star_bar()) + ",seed=" + std::to_string(tv.seed()) +
           ")";
}

Payload& Inbox::claim(std::uint64_t step) {
    const std::size_t s = slot(step);
    if (steps_[s] != step) {
        if (steps_[s] != kEmpty) throw InvariantViolation("inbox slot collision: delay exceeds inbox horizon");
        steps_[s] = step;
        slots_[s] = {};
    }
    return slots_[s];
}

void Inbox::deliver(std::uint64_t consume_step, const Payload& p) { claim(consume_step) += p; }

void Inbox::add_x(std::uint64_t consume_step, double dx) { claim(consume_step).x += dx; }

Payload Inbox::take(std::uint64_t consume_step) {
    const std::size_t s = slot(consume_step);
    if (steps_[s] != consume_step) return {};
    steps_[s] = kEmpty;
    return slots_[s];
}

Payload Inbox::peek(std::uint64_t consume_step) const {
    const std::size_t s = slot(consume_step);
    return steps_[s] == consume_step ? slots_[s] : Payload{};
}

Payload Inbox::pending() const {
    Payload total;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (steps_[s] != kEmpty) total += slots_[s];
    }
    return total;
}

namespace {

std::size_t horizon_of(const DelaySource& source) {
    if (const auto* fixed = std::get_if<DelayAssignment>(&source)) return fixed->tau_bar();
    return std::get<TimeVaryingDelaySampler>(source).tau_star_bar();
}

}  // namespace

MessagePassingEngine::MessagePassingEngine(Digraph graph, const WeightMatrix& weights, DelaySource delays,
                                           ObjectiveSet objectives, std::span<const double> x0, double alpha,
                                           Interpretation interpretation)
    : graph_(std::move(graph)),
      p_(weights.matrix()),
      delays_(std::move(delays)),
      objectives_(std::move(objectives)),
      alpha_(alpha),
      interpretation_(interpretation) {
    const std::size_t n = graph_.node_count();
    if (weights.size() != n) throw StructuralError("weight matrix size does not match graph");
    if (x0.size() != n) throw StructuralError("x0 has " + std::to_string(x0.size()) + " entries for " +
                                              std::to_string(n) + " nodes");
    if (!objectives_.empty() && objectives_.size() != n) {
        throw StructuralError("objective count does not match node count");
    }
    if (const auto* fixed = std::get_if<DelayAssignment>(&delays_)) {
        if (fixed->graph().node_count() != n || fixed->graph().edge_count() != graph_.edge_count()) {
            throw StructuralError("delay assignment was built for a different graph");
        }
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("step-size must be finite and >= 0");

    const std::size_t horizon = horizon_of(delays_);
    nodes_.reserve(n);
    for (NodeId j = 0; j < n; ++j) {
        NodeState s;
        s.x = x0[j];
        s.y = 1.0;
        s.z = x0[j];
        s.w = gradient(j, s.z);
        s.inbox = Inbox(horizon);
        nodes_.push_back(std::move(s));
    }
}

double MessagePassingEngine::gradient(NodeId j, double z) const {
    return objectives_.empty() ? 0.0 : objectives_[j]->gradient(z);
}

std::size_t MessagePassingEngine::link_delay(std::size_t edge, std::uint64_t step) const {
    if (const auto* fixed = std::get_if<DelayAssignment>(&delays_)) return fixed->delay(edge);
    return std::get<TimeVaryingDelaySampler>(delays_).sample(step, edge);
}

void MessagePassingEngine::step() {
    const std::uint64_t k = k_;
    const std::size_t n = nodes_.size();

    // In-flight x loses alpha times the in-flight w that sits one step closer to arrival,
    // read before this round's transmissions are added.
    if (interpretation_ == Interpretation::matrix_consistent && alpha_ != 0.0) {
        for (auto& node : nodes_) {
            const std::size_t h = node.inbox.horizon();
            for (std::uint64_t a = k + 2; a <= k + 1 + h; ++a) {
                const double w = node.inbox.peek(a - 1).w;
                if (w != 0.0) node.inbox.add_x(a, -alpha_ * w);
            }
        }
    }

    for (NodeId i = 0; i < n; ++i) {
        const NodeState& s = nodes_[i];
        for (std::size_t e : graph_.out_edges(i)) {
            const NodeId j = graph_.edge(e).to;
            const double p = p_(j, i);
            nodes_[j].inbox.deliver(k + 1 + link_delay(e, k), {p * s.x, p * s.y, p * s.w, s.w});
        }
    }

    for (NodeId j = 0; j < n; ++j) {
        NodeState& s = nodes_[j];
        const Payload in = s.inbox.take(k + 1);
        const double pjj = p_(j, j);

        double x_next = pjj * s.x + in.x - alpha_ * s.w;
        if (interpretation_ == Interpretation::literal) {
            // own term of the sum (tau_jj = 0) plus the separate -alpha w_j[k]
            x_next -= alpha_ * s.w + alpha_ * in.raw_w;
        }
        const double y_next = pjj * s.y + in.y;
        if (!(y_next > 0.0)) {
            throw InvariantViolation("y became non-positive at actual node " + std::to_string(j + 1) + ", step " +
                                     std::to_string(k + 1));
        }
        const double z_next = x_next / y_next;
        const double w_next = pjj * s.w + in.w + gradient(j, z_next) - gradient(j, s.z);
        s.x = x_next;
        s.y = y_next;
        s.z = z_next;
        s.w = w_next;
    }
    ++k_;
}

std::vector<double> MessagePassingEngine::z() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (const auto& s : nodes_) out.push_back(s.z);
    return out;
}

double MessagePassingEngine::total_y() const {
    double t = 0.0;
    for (const auto& s : nodes_) t += s.y + s.inbox.pending().y;
    return t;
}

double MessagePassingEngine::total_w() const {
    double t = 0.0;
    for (const auto& s : nodes_) t += s.w + s.inbox.pending().w;
    return t;
}

namespace {

void check_divergence(const MessagePassingEngine& engine, double bound) {
    double worst = 0.0;
    for (const auto& s : engine.states()) {
        for (double v : {s.x, s.z, s.w}) {
            if (!std::isfinite(v)) throw DivergenceError(engine.k(), v);
            worst = std::max(worst, std::abs(v));
        }
    }
    if (worst > bound) throw DivergenceError(engine.k(), worst);
}

Trace run(MessagePassingEngine& engine, Trace trace, const RunOptions& options) {
    trace.append(engine.z());
    for (std::size_t it = 0; it < options.max_iter; ++it) {
        if (options.tol && trace.final_residual() <= *options.tol) {
            trace.converged = true;
            return trace;
        }
        engine.step();
        check_divergence(engine, options.divergence_bound);
        trace.append(engine.z());
    }
    trace.converged = options.tol && trace.final_residual() <= *options.tol;
    return trace;
}

}  // namespace

Trace ratio_consensus_run(const Digraph& graph, const WeightMatrix& weights, const DelaySource& delays,
                          std::span<const double> x0, const RunOptions& options) {
    MessagePassingEngine engine(graph, weights, delays, {}, x0, 0.0, Interpretation::own_w_once);
    Trace trace;
    trace.meta.algorithm = "ratio-consensus";
    trace.meta.delay_model = describe(delays);
    if (const auto* tv = std::get_if<TimeVaryingDelaySampler>(&delays)) trace.meta.seed = tv->seed();
    trace.meta.x_star =
        x0.empty() ? 0.0 : std::accumulate(x0.begin(), x0.end(), 0.0) / static_cast<double>(x0.size());
    return run(engine, std::move(trace), options);
}

Trace radd_opt_run_message_passing(const Digraph& graph, const WeightMatrix& weights, const DelaySource& delays,
                                   const ObjectiveSet& objectives, std::span<const double> x0, double alpha,
                                   Interpretation interpretation, double x_star, const RunOptions& options) {
    if (objectives.size() != graph.node_count()) throw StructuralError("one objective per node is required");
    MessagePassingEngine engine(graph, weights, delays, objectives, x0, alpha, interpretation);
    Trace trace;
    trace.meta.algorithm = "radd-opt-mp";
    trace.meta.interpretation = std::string(to_string(interpretation));
    trace.meta.alpha = alpha;
    trace.meta.delay_model = describe(delays);
    if (const auto* tv = std::get_if<TimeVaryingDelaySampler>(&delays)) trace.meta.seed = tv->seed();
    trace.meta.x_star = x_star;
    return run(engine, std::move(trace), options);
}

}  // namespace raddopt
