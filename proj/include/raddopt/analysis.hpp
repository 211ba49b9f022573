#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "raddopt/augmented.hpp"
#include "raddopt/objectives.hpp"

namespace raddopt {

// ||a||_v = ||diag(sqrt(v))^-1 a||_2. Throws DomainError on size mismatch or v_i <= 0.
double weighted_norm(std::span<const double> a, std::span<const double> v);
double weighted_norm(const Eigen::VectorXd& a, const Eigen::VectorXd& v);

// Operator norm of A induced by ||.||_v, by power iteration on A*A where A* is the
// adjoint under the v-weighted inner product. Works only through weighted_norm and
// matrix-vector products.
double weighted_operator_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double tolerance = 1e-15,
                              std::size_t max_iterations = 200'000);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& a);

// sigma_2(diag(sqrt(pi))^-1 Xi diag(sqrt(pi))): the weighted-norm contraction of Xi.
// With uniform delays of 2 or more on the canonical graphs it is exactly 1, because
// every pure-relay virtual node contributes a unit singular value.
double weighted_singular_contraction(const AugmentedSystem& aug);

// |lambda_2(Xi)| = rho(Xi - Xi_inf): modulus of the second-largest eigenvalue.
double second_eigenvalue_modulus(const AugmentedSystem& aug);

enum class SigmaMethod { second_eigenvalue, weighted_singular };
std::string to_string(SigmaMethod m);
SigmaMethod parse_sigma_method(const std::string& s);

// Contraction factor sigma by the chosen method. Throws AnalysisError when sigma >= 1
// (augmented graph not primitive, or the weighted-norm bound saturates).
double compute_sigma(const AugmentedSystem& aug, SigmaMethod method = SigmaMethod::second_eigenvalue);

struct NormConstants {
    double epsilon = 0.0;  // ||I - Xi_inf||_2
    double xi_norm = 0.0;  // ||Xi - I||_2
};
NormConstants compute_norm_constants(const AugmentedSystem& aug);

struct YBounds {
    double y_sup = 0.0;    // sup_k ||Y_k||_2
    double y_tilde = 0.0;  // sup_k ||Y_k^-1||_2 over k in [burn_in, horizon]
};

// Runs y^ <- Xi y^ from [1_n; 0]. Requires horizon > burn_in >= tau_bar + 1.
YBounds estimate_y_bounds(const AugmentedSystem& aug, std::size_t burn_in, std::size_t horizon);

// Scalars entering G_alpha and the step-size bound.
struct ConvergenceConstants {
    double c = 1.0;
    double d = 1.0;
    double lipschitz = 1.0;         // L
    double strong_convexity = 1.0;  // mu
    double y_sup = 1.0;
    double y_tilde = 1.0;
    double epsilon = 1.0;
    double xi_norm = 1.0;
    double sigma = 0.5;
    std::size_t n_bar = 1;

    double zeta(double alpha) const;  // |1 - n_bar alpha L|
    double chi(double alpha) const;   // |1 - n_bar alpha mu|
    double eta(double alpha) const;   // max(zeta, chi)
};

struct ConstantOverrides {
    std::optional<double> c, d, lipschitz, strong_convexity, y_sup, y_tilde, epsilon, xi_norm, sigma;
};

struct DeriveOptions {
    SigmaMethod sigma_method = SigmaMethod::second_eigenvalue;
    std::size_t y_horizon = 2000;
};

// Computes every constant not pinned by `overrides` from the augmented system and
// the objectives' curvature. n_bar is always the augmented node count.
ConvergenceConstants derive_constants(const AugmentedSystem& aug, const CurvatureConstants& curvature,
                                      const ConstantOverrides& overrides = {}, const DeriveOptions& options = {});

struct StepSizeBound {
    double alpha_bar = 0.0;
    double delta = 0.0;
    double theta = 0.0;
    double curvature_branch = 0.0;  // (sqrt(delta^2 + 4 n_bar mu (1 - sigma)^2 theta) - delta) / (2 theta)
    double lipschitz_branch = 0.0;  // 1 / (n_bar L)
};

// Throws DomainError on non-positive constants and AnalysisError when sigma >= 1.
StepSizeBound step_size_bound(const ConvergenceConstants& cc);
double alpha_bar(const ConvergenceConstants& cc);

Eigen::Matrix3d build_G(const ConvergenceConstants& cc, double alpha);

// Largest root modulus of the characteristic polynomial, solved in closed form and
// polished with Newton steps.
double spectral_radius(const Eigen::Matrix3d& g);

struct SweepPoint {
    double alpha = 0.0;
    double rho = 0.0;
};

struct AlphaSweep {
    std::vector<SweepPoint> points;
    double argmin_alpha = 0.0;
    double min_rho = 0.0;
};

// Throws DomainError on an empty grid or a non-positive grid point.
AlphaSweep sweep_alpha(const ConvergenceConstants& cc, std::span<const double> grid);

// `count` log-spaced points alpha_bar * 10^(-decades * (1 - i / count)), i = 0..count-1,
// all strictly inside (0, alpha_bar).
std::vector<double> log_spaced_grid(double alpha_bar, std::size_t count, double decades = 3.0);

}  // namespace raddopt
