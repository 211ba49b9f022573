#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "raddopt/canonical.hpp"
#include "raddopt/error.hpp"
#include "raddopt/objectives.hpp"

using namespace raddopt;

TEST_CASE("quadratic gradient") {
    CHECK(QuadraticObjective(1, 4).gradient(4) == 0.0);
    CHECK(QuadraticObjective(5, 1).gradient(2) == 5.0);
    CHECK(QuadraticObjective(3, 5).gradient(0) == -15.0);
    CHECK(QuadraticObjective(2, 1).value(3) == 4.0);
    CHECK_THROWS_AS(QuadraticObjective(0, 1), DomainError);
    CHECK_THROWS_AS(QuadraticObjective(-1, 1), DomainError);
    CHECK_THROWS_AS(QuadraticObjective(1, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("closed-form minimizer") {
    CHECK(closed_form_minimizer(canonical::quadratics()) == 2.5);

    std::vector<QuadraticObjective> unit;
    for (double phi : {4.0, 1.0, 5.0, 2.0, 3.0}) unit.emplace_back(1.0, phi);
    CHECK(closed_form_minimizer(unit) == doctest::Approx(3.0));

    std::vector<QuadraticObjective> one{QuadraticObjective(7.0, -1.5)};
    CHECK(closed_form_minimizer(one) == -1.5);
    CHECK_THROWS_AS(closed_form_minimizer({}), DomainError);
}

TEST_CASE("aggregate curvature") {
    const auto c = aggregate_constants(to_objective_set(canonical::quadratics()));
    CHECK(c.lipschitz == 5.0);
    CHECK(c.strong_convexity == 1.0);

    std::vector<QuadraticObjective> same(3, QuadraticObjective(2.0, 0.0));
    const auto s = aggregate_constants(to_objective_set(same));
    CHECK(s.lipschitz == 2.0);
    CHECK(s.strong_convexity == 2.0);
    CHECK_THROWS_AS(aggregate_constants({}), DomainError);
}

TEST_CASE("published constants pass through") {
    const auto o = canonical::published_constants();
    CHECK(*o.lipschitz == 1.0);
    CHECK(*o.strong_convexity == 0.1);
    CHECK(*o.c == 1.0);
    CHECK(*o.d == 1.0);
    CHECK_FALSE(o.sigma.has_value());
}

TEST_CASE("finite differences and strong convexity on shipped objectives") {
    const auto quads = load_quadratics(RADDOPT_DATA_DIR "/canonical/objectives.txt", 5);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (const auto& f : quads) {
        const double h = 1e-5;
        for (double z = -10.0; z <= 10.0; z += 0.25) {
            const double fd = (f.value(z + h) - f.value(z - h)) / (2 * h);
            CHECK(std::abs(fd - f.gradient(z)) <= 1e-6);
        }
        const double mu = f.strong_convexity();
        for (int i = 0; i < 500; ++i) {
            const double a = u(rng), b = u(rng);
            CHECK(f.value(a) - f.value(b) <= f.gradient(a) * (a - b) - 0.5 * mu * (a - b) * (a - b) + 1e-9);
        }
    }
}

TEST_CASE("objective file format") {
    const auto q = parse_quadratics("quad 2 5 1\nquad 1 1 4\n", 2);
    CHECK(q[0].beta() == 1.0);
    CHECK(q[1].phi() == 1.0);

    auto line_of = [](const std::string& text) {
        try {
            (void)parse_quadratics(text, 2, "o.txt");
        } catch (const InputError& e) {
            return e.line();
        }
        return std::size_t{99};
    };
    CHECK(line_of("quad 1 1 4\nquad 2 0 1\n") == 2);  // beta must be positive
    CHECK(line_of("quad 1 1 4\nquad 1 2 1\n") == 2);  // duplicate
    CHECK(line_of("quad 3 1 4\n") == 1);
    CHECK(line_of("quad 1 1\n") == 1);
    CHECK(line_of("quad 1 1 4\n") == 0);  // node 2 missing
}
