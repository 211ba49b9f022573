#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace raddopt {

// Local cost f_i of one node: a differentiable scalar function with L-Lipschitz
// gradient and mu-strong convexity.
class LocalObjective {
public:
    virtual ~LocalObjective() = default;

    virtual double value(double z) const = 0;
    virtual double gradient(double z) const = 0;
    virtual double lipschitz() const = 0;
    virtual double strong_convexity() const = 0;
};

// f(z) = beta/2 (z - phi)^2, the resource-allocation cost with curvature beta and demand phi.
class QuadraticObjective final : public LocalObjective {
public:
    // Throws DomainError unless beta > 0 and both arguments are finite.
    QuadraticObjective(double beta, double phi);

    double beta() const noexcept { return beta_; }
    double phi() const noexcept { return phi_; }

    double value(double z) const override { return 0.5 * beta_ * (z - phi_) * (z - phi_); }
    double gradient(double z) const override { return beta_ * (z - phi_); }
    double lipschitz() const override { return beta_; }
    double strong_convexity() const override { return beta_; }

private:
    double beta_;
    double phi_;
};

// One objective per node, indexed by 0-based node id.
using ObjectiveSet = std::vector<std::shared_ptr<const LocalObjective>>;

ObjectiveSet make_quadratic_set(std::span<const double> betas, std::span<const double> phis);

// Global minimiser sum(beta_i phi_i) / sum(beta_i). Throws DomainError on an empty set.
double closed_form_minimizer(std::span<const QuadraticObjective> objectives);

struct CurvatureConstants {
    double lipschitz = 0.0;         // L = max_i L_i
    double strong_convexity = 0.0;  // mu = min_i mu_i
};

// Network-wide constants. Throws DomainError on an empty set.
CurvatureConstants aggregate_constants(const ObjectiveSet& objectives);

// Objective file format: `quad <node-id> <beta> <phi>` per line (1-based ids), exactly
// one line per node 1..n.
std::vector<QuadraticObjective> parse_quadratics(const std::string& text, std::size_t node_count,
                                                 const std::string& source = "<objectives>");
std::vector<QuadraticObjective> load_quadratics(const std::string& path, std::size_t node_count);
ObjectiveSet to_objective_set(std::span<const QuadraticObjective> quadratics);

}  // namespace raddopt
