#include <doctest.h>

#include <array>
#include <random>

#include "raddopt/augmented.hpp"
#include "raddopt/canonical.hpp"
#include "raddopt/delays.hpp"
#include "raddopt/error.hpp"
#include "support.hpp"

using namespace raddopt;

namespace {

DelayAssignment fig1_delays() {
    const Digraph g = canonical::two_node_graph();
    return DelayAssignment(g, {2, 1});  // 1->2 waits 2 steps, 2->1 waits 1
}

}  // namespace

TEST_CASE("split by delay") {
    SUBCASE("all delays zero") {
        const Digraph g = canonical::graph();
        const auto p = build_weight_matrix(g);
        const auto parts = split_by_delay(p, DelayAssignment::zero(g));
        REQUIRE(parts.size() == 1);
        CHECK(parts[0] == p.matrix());
    }
    SUBCASE("two-node example") {
        const auto d = fig1_delays();
        const auto p = build_weight_matrix(d.graph());
        const auto parts = split_by_delay(p, d);
        REQUIRE(parts.size() == 3);
        CHECK(parts[0](0, 0) == 0.5);
        CHECK(parts[0](1, 1) == 0.5);
        CHECK(parts[0](0, 1) == 0.0);
        CHECK(parts[0](1, 0) == 0.0);
        CHECK(parts[1](0, 1) == 0.5);
        CHECK(parts[1].sum() == 0.5);
        CHECK(parts[2](1, 0) == 0.5);
        CHECK(parts[2].sum() == 0.5);
    }
    SUBCASE("random 4-node graphs sum back bit-exactly") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            const Digraph g = testing::random_strong_graph(rng, 4, 0.4);
            const auto p = build_weight_matrix(g);
            const auto parts = split_by_delay(p, testing::random_delays(rng, g, 3));
            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4, 4);
            for (const auto& part : parts) sum += part;
            CHECK(sum == p.matrix());
        }
    }
}

TEST_CASE("zero delay augmentation is the weight matrix") {
    const Digraph g = canonical::graph();
    const auto p = build_weight_matrix(g);
    const auto aug = build_augmented(p, DelayAssignment::zero(g));
    CHECK(aug.n_bar() == 5);
    CHECK(aug.xi() == p.matrix());
    const auto direct = perron_vector(p.matrix());
    CHECK((aug.pi() - direct.pi).norm() == doctest::Approx(0.0));
}

TEST_CASE("two-node augmentation") {
    const auto d = fig1_delays();
    const auto p = build_weight_matrix(d.graph());

    const auto full = build_augmented(p, d, false);
    CHECK(full.n_bar() == 6);
    CHECK(augmented_link_bound(d.graph(), 2) == 10);
    CHECK(full.link_count() == 6);
    CHECK(full.link_count() <= augmented_link_bound(d.graph(), 2));
    CHECK_FALSE(full.has_perron());
    CHECK_THROWS_AS((void)full.pi(), StructuralError);

    const auto pruned = build_augmented(p, d);
    CHECK(pruned.n_bar() == 5);
    CHECK_FALSE(pruned.index_of(0, 2).has_value());
    REQUIRE(pruned.index_of(1, 2).has_value());
    // node 1's output reaches node 2 through v_2^(2) -> v_2^(1) -> 2
    const auto v22 = static_cast<Eigen::Index>(*pruned.index_of(1, 2));
    const auto v21 = static_cast<Eigen::Index>(*pruned.index_of(1, 1));
    CHECK(pruned.xi()(v22, 0) == 0.5);
    CHECK(pruned.xi()(v21, v22) == 1.0);
    CHECK(pruned.xi()(1, v21) == 1.0);
}

TEST_CASE("augmentation properties on random systems") {
    std::mt19937_64 rng(2024);
    int cases = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const Digraph g = testing::random_strong_graph(rng, n);
        const auto d = testing::random_delays(rng, g, trial % 5);
        const auto p = build_weight_matrix(g);
        for (bool prune : {true, false}) {
            const auto aug = build_augmented(p, d, prune);
            const Eigen::MatrixXd& xi = aug.xi();
            const auto nb = static_cast<Eigen::Index>(aug.n_bar());
            ++cases;

            // column-stochastic
            CHECK((xi.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);

            // exact block pattern
            Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(nb, nb);
            for (NodeId j = 0; j < n; ++j) expected(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = p(j, j);
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                const auto [from, to] = g.edge(e);
                expected(static_cast<Eigen::Index>(*aug.index_of(to, d.delay(e))), static_cast<Eigen::Index>(from)) =
                    p(to, from);
            }
            for (std::size_t idx = n; idx < aug.n_bar(); ++idx) {
                const auto [node, level] = aug.index_map()[idx];
                expected(static_cast<Eigen::Index>(*aug.index_of(node, level - 1)), static_cast<Eigen::Index>(idx)) = 1.0;
            }
            CHECK(xi == expected);
            CHECK(aug.link_count() <= augmented_link_bound(g, d.tau_bar()));
            CHECK(aug.n_bar() <= n * (d.tau_bar() + 1));

            if (!prune) {
                CHECK(aug.n_bar() == n * (d.tau_bar() + 1));
                continue;
            }
            const Eigen::VectorXd& pi = aug.pi();
            CHECK((pi.array() > 0.0).all());
            CHECK(std::abs(pi.sum() - 1.0) <= 1e-12);
            CHECK((xi * pi - pi).norm() <= 1e-10);
            const Eigen::MatrixXd inf = aug.xi_inf();
            CHECK((inf * xi - inf).cwiseAbs().maxCoeff() <= 1e-10);

            // y^ = Xi^k [1_n; 0] -> n pi
            Eigen::VectorXd y = Eigen::VectorXd::Zero(nb);
            y.head(static_cast<Eigen::Index>(n)).setOnes();
            for (int k = 0; k < 5000; ++k) y = xi * y;
            CHECK((y - static_cast<double>(n) * pi).cwiseAbs().maxCoeff() <= 1e-8);
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("augmentation rejects graphs that are not strongly connected") {
    // weights of a strongly connected graph paired with delays on a broken one
    const Digraph broken(2, {{0, 1}});
    const auto p = build_weight_matrix(Digraph(2, {{0, 1}, {1, 0}}));
    CHECK_THROWS(build_augmented(p, DelayAssignment::zero(broken)));
}

TEST_CASE("perron vector") {
    Eigen::MatrixXd a(2, 2);
    a << 0.9, 0.2, 0.1, 0.8;
    const auto r = perron_vector(a);
    CHECK(r.pi(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(r.pi(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(r.residual <= 1e-12);
    CHECK_THROWS_AS(perron_vector(a, {1e-12, 3}), AnalysisError);
}

TEST_CASE("time-varying sampler") {
    SUBCASE("zero bound") {
        const TimeVaryingDelaySampler s(0, 99);
        for (std::uint64_t k = 0; k < 100; ++k) {
            for (std::size_t e = 0; e < 8; ++e) CHECK(s.sample(k, e) == 0);
        }
    }
    SUBCASE("deterministic") {
        const TimeVaryingDelaySampler a(5, 42), b(5, 42);
        for (std::uint64_t k = 0; k < 50; ++k) {
            CHECK(a.sample(k, 3) == a.sample(k, 3));
            CHECK(a.sample_all(k, 6) == b.sample_all(k, 6));
        }
    }
    SUBCASE("frequencies over a seed sweep") {
        std::array<int, 6> count{};
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const std::size_t v = TimeVaryingDelaySampler(5, seed).sample(seed % 17, seed % 5);
            REQUIRE(v <= 5);
            ++count[v];
        }
        for (int c : count) CHECK(std::abs(c / 1000.0 - 1.0 / 6.0) <= 0.05);
    }
    SUBCASE("different seeds differ") {
        const auto a = TimeVaryingDelaySampler(5, 1).sample_all(3, 64);
        const auto b = TimeVaryingDelaySampler(5, 2).sample_all(3, 64);
        CHECK(a != b);
    }
}

TEST_CASE("delay file format") {
    const Digraph g = canonical::graph();
    const auto d = parse_delays("tau_bar 4\ndelay 1 3 4\ndelay 5 1 2\n", g);
    CHECK(d.tau_bar() == 4);
    CHECK(d.delay(*g.edge_index(0, 2)) == 4);
    CHECK(d.delay(*g.edge_index(4, 0)) == 2);
    CHECK(d.delay(*g.edge_index(1, 3)) == 0);
    CHECK(d.max_incoming_delay(2) == 4);
    CHECK(parse_delays(format_delays(d), g).per_edge() == d.per_edge());

    auto line_of = [&](const std::string& text) {
        try {
            (void)parse_delays(text, g, "d.txt");
        } catch (const InputError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("delay 1 2 3\n") == 1);            // no such edge
    CHECK(line_of("\ndelay 1 3 -1\n") == 2);         // negative
    CHECK(line_of("tau_bar 1\ndelay 1 3 2\n") == 2);  // exceeds bound
    CHECK(line_of("delay 1 3 1\ndelay 1 3 1\n") == 2);
    CHECK(line_of("delay 9 3 1\n") == 1);
    CHECK(line_of("lag 1 3 1\n") == 1);
}
