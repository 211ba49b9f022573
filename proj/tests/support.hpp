#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "raddopt/delays.hpp"
#include "raddopt/digraph.hpp"

namespace testing {

// Strongly connected digraph: a random Hamiltonian cycle plus each other ordered pair
// with probability p.
inline raddopt::Digraph random_strong_graph(std::mt19937_64& rng, std::size_t n, double p = 0.3) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    std::vector<raddopt::Edge> edges;
    if (n > 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = perm[i], b = perm[(i + 1) % n];
            if (!has[a][b]) edges.push_back({a, b}), has[a][b] = true;
        }
    }
    std::bernoulli_distribution coin(p);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && !has[a][b] && coin(rng)) edges.push_back({a, b}), has[a][b] = true;
        }
    }
    return raddopt::Digraph(n, edges);
}

inline raddopt::DelayAssignment random_delays(std::mt19937_64& rng, const raddopt::Digraph& g, std::size_t tau_max) {
    std::uniform_int_distribution<std::size_t> d(0, tau_max);
    std::vector<std::size_t> per_edge(g.edge_count());
    for (auto& t : per_edge) t = d(rng);
    return raddopt::DelayAssignment(g, per_edge);
}

// Roots of the monic polynomial x^3 + a x^2 + b x + c by Durand-Kerner iteration.
inline std::vector<std::complex<double>> durand_kerner_cubic(double a, double b, double c) {
    using C = std::complex<double>;
    auto f = [&](C x) { return ((x + a) * x + b) * x + c; };
    std::vector<C> r{C(0.4, 0.9), C(0.4, 0.9) * C(0.4, 0.9), C(0.4, 0.9) * C(0.4, 0.9) * C(0.4, 0.9)};
    for (int it = 0; it < 2000; ++it) {
        for (std::size_t i = 0; i < 3; ++i) {
            C den = 1.0;
            for (std::size_t j = 0; j < 3; ++j) {
                if (j != i) den *= r[i] - r[j];
            }
            r[i] -= f(r[i]) / den;
        }
    }
    return r;
}

// Delay-free ADD-OPT with plain loops: x+ = P x - a w, y+ = P y, z = x / y,
// w+ = P w + grad(z+) - grad(z). Returns z at steps 0..steps.
inline std::vector<std::vector<double>> add_opt_oracle(const std::vector<std::vector<double>>& p,
                                                       const std::vector<double>& beta,
                                                       const std::vector<double>& phi,
                                                       const std::vector<double>& x0, double alpha,
                                                       std::size_t steps) {
    const std::size_t n = x0.size();
    auto mul = [&](const std::vector<double>& v) {
        std::vector<double> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out[i] += p[i][j] * v[j];
        }
        return out;
    };
    auto grad = [&](const std::vector<double>& z) {
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = beta[i] * (z[i] - phi[i]);
        return g;
    };
    std::vector<double> x = x0, y(n, 1.0), z = x0;
    std::vector<double> g = grad(z), w = g;
    std::vector<std::vector<double>> out{z};
    for (std::size_t k = 0; k < steps; ++k) {
        auto px = mul(x), py = mul(y), pw = mul(w);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = px[i] - alpha * w[i];
            y[i] = py[i];
            z[i] = x[i] / y[i];
        }
        const auto g_next = grad(z);
        for (std::size_t i = 0; i < n; ++i) w[i] = pw[i] + g_next[i] - g[i];
        g = g_next;
        out.push_back(z);
    }
    return out;
}

}  // namespace testing
