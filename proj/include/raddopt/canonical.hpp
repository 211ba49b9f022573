#pragma once

#include <array>

#include "raddopt/analysis.hpp"
#include "raddopt/digraph.hpp"
#include "raddopt/objectives.hpp"

namespace raddopt::canonical {

// Five-node strongly connected digraph used by the resource-allocation example:
// 1->3, 1->4, 2->4, 2->5, 3->2, 3->4, 4->2, 5->1. Without delays its weight matrix has
// |lambda_2| = 0.59992, ||P - I||_2 = 1.1302, ||I - P_inf||_2 = 1.1019 and
// sup ||Y_k||_2 = 1.6713, matching the published example constants.
Digraph graph();

inline constexpr std::array<double, 5> kInitialX{4.0, 1.0, 5.0, 2.0, 3.0};
inline constexpr std::array<double, 5> kBeta{1.0, 5.0, 3.0, 4.0, 1.0};
inline constexpr std::array<double, 5> kPhi{4.0, 1.0, 5.0, 2.0, 3.0};
inline constexpr std::array<std::size_t, 4> kDelayBounds{0, 2, 5, 10};

std::vector<QuadraticObjective> quadratics();

// c = d = L = 1, mu = 0.1, y = 1.67, y~ = 3, epsilon = 1.1, xi = 1.13; sigma and n_bar
// are left to be computed per delay bound.
ConstantOverrides published_constants();

// Two nodes, link 1->2 delayed 2 steps and 2->1 delayed 1 step.
Digraph two_node_graph();

}  // namespace raddopt::canonical
