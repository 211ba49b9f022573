#include "raddopt/canonical.hpp"

namespace raddopt::canonical {

Digraph graph() {
    return Digraph(5, {{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 1}, {2, 3}, {3, 1}, {4, 0}});
}

std::vector<QuadraticObjective> quadratics() {
    std::vector<QuadraticObjective> out;
    for (std::size_t i = 0; i < kBeta.size(); ++i) out.emplace_back(kBeta[i], kPhi[i]);
    return out;
}

ConstantOverrides published_constants() {
    ConstantOverrides o;
    o.c = 1.0;
    o.d = 1.0;
    o.lipschitz = 1.0;
    o.strong_convexity = 0.1;
    o.y_sup = 1.67;
    o.y_tilde = 3.0;
    o.epsilon = 1.1;
    o.xi_norm = 1.13;
    return o;
}

Digraph two_node_graph() { return Digraph(2, {{0, 1}, {1, 0}}); }

}  // namespace raddopt::canonical
