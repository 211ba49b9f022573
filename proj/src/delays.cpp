#include "raddopt/delays.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "raddopt/error.hpp"
#include "text_util.hpp"

namespace raddopt {

DelayAssignment::DelayAssignment(Digraph graph, std::vector<std::size_t> per_edge)
    : graph_(std::move(graph)), delays_(std::move(per_edge)) {
    if (delays_.size() != graph_.edge_count()) {
        throw StructuralError("delay assignment has " + std::to_string(delays_.size()) +
                              " entries for " + std::to_string(graph_.edge_count()) + " edges");
    }
    if (!delays_.empty()) tau_bar_ = *std::max_element(delays_.begin(), delays_.end());
}

DelayAssignment DelayAssignment::uniform(const Digraph& graph, std::size_t tau) {
    return DelayAssignment(graph, std::vector<std::size_t>(graph.edge_count(), tau));
}

std::size_t DelayAssignment::max_incoming_delay(NodeId j) const {
    std::size_t m = 0;
    for (std::size_t e : graph_.in_edges(j)) m = std::max(m, delays_[e]);
    return m;
}

DelayAssignment parse_delays(const std::string& text, const Digraph& graph, const std::string& source) {
    std::vector<std::size_t> delays(graph.edge_count(), 0);
    std::vector<bool> listed(graph.edge_count(), false);
    std::optional<std::size_t> declared;
    std::size_t declared_line = 0;
    std::size_t max_line = 0;
    std::size_t max_seen = 0;

    detail::for_each_record(text, [&](std::size_t line, const auto& tok) {
        if (tok[0] == "tau_bar") {
            std::size_t v = 0;
            if (declared) throw InputError(source, line, "duplicate 'tau_bar' header");
            if (tok.size() != 2 || !detail::parse_int(tok[1], v)) {
                throw InputError(source, line, "expected 'tau_bar <value>'");
            }
            declared = v;
            declared_line = line;
        } else if (tok[0] == "delay") {
            std::size_t from = 0, to = 0, tau = 0;
            if (tok.size() != 4 || !detail::parse_int(tok[1], from) || !detail::parse_int(tok[2], to) ||
                !detail::parse_int(tok[3], tau)) {
                throw InputError(source, line, "expected 'delay <from> <to> <tau>' with tau >= 0");
            }
            const std::size_t n = graph.node_count();
            if (from < 1 || from > n || to < 1 || to > n) {
                throw InputError(source, line, "node id outside 1.." + std::to_string(n));
            }
            auto e = graph.edge_index(from - 1, to - 1);
            if (!e) {
                throw InputError(source, line,
                                 "no edge " + std::to_string(from) + "->" + std::to_string(to) + " in graph");
            }
            if (listed[*e]) throw InputError(source, line, "duplicate delay entry");
            listed[*e] = true;
            delays[*e] = tau;
            if (tau > max_seen) {
                max_seen = tau;
                max_line = line;
            }
        } else {
            throw InputError(source, line, "unknown directive '" + std::string(tok[0]) + "'");
        }
    });
    if (declared && *declared < max_seen) {
        throw InputError(source, max_line,
                         "delay " + std::to_string(max_seen) + " exceeds tau_bar " +
                             std::to_string(*declared) + " declared on line " + std::to_string(declared_line));
    }
    return DelayAssignment(graph, std::move(delays));
}

DelayAssignment load_delays(const std::string& path, const Digraph& graph) {
    return parse_delays(detail::read_file(path), graph, path);
}

std::string format_delays(const DelayAssignment& d) {
    std::ostringstream os;
    os << "tau_bar " << d.tau_bar() << '\n';
    const auto& g = d.graph();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        os << "delay " << g.edge(e).from + 1 << ' ' << g.edge(e).to + 1 << ' ' << d.delay(e) << '\n';
    }
    return os.str();
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::size_t TimeVaryingDelaySampler::sample(std::uint64_t step, std::size_t edge_index) const noexcept {
    if (bound_ == 0) return 0;
    std::uint64_t h = splitmix64(seed_);
    h = splitmix64(h ^ step);
    h = splitmix64(h ^ (static_cast<std::uint64_t>(edge_index) * 0xd6e8feb86659fd93ULL));
    // modulo bias is below bound / 2^64
    return static_cast<std::size_t>(h % (static_cast<std::uint64_t>(bound_) + 1));
}

std::vector<std::size_t> TimeVaryingDelaySampler::sample_all(std::uint64_t step, std::size_t edge_count) const {
    std::vector<std::size_t> out(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e) out[e] = sample(step, e);
    return out;
}

}  // namespace raddopt
