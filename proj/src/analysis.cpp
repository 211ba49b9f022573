#include "raddopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "raddopt/error.hpp"

namespace raddopt {

double weighted_norm(std::span<const double> a, std::span<const double> v) {
    if (a.size() != v.size()) throw DomainError("weighted_norm: vector and weight sizes differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(v[i] > 0.0)) throw DomainError("weighted_norm: weights must be positive");
        sum += a[i] * a[i] / v[i];
    }
    return std::sqrt(sum);
}

double weighted_norm(const Eigen::VectorXd& a, const Eigen::VectorXd& v) {
    return weighted_norm(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                         std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

double weighted_operator_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double tolerance,
                              std::size_t max_iterations) {
    const Eigen::Index n = a.cols();
    if (a.rows() != n || v.size() != n) throw DomainError("weighted_operator_norm: shape mismatch");
    // adjoint under <u, w>_v = u^T diag(v)^-1 w
    const Eigen::MatrixXd adj = v.asDiagonal() * a.transpose() * v.cwiseInverse().asDiagonal();

    Eigen::VectorXd u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = 1.0 + 0.1 * std::sin(1.0 + static_cast<double>(i));
    u /= weighted_norm(u, v);
    double estimate = weighted_norm(Eigen::VectorXd(a * u), v);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd next = adj * (a * u);
        const double scale = weighted_norm(next, v);
        if (scale == 0.0) return 0.0;
        u = next / scale;
        const double updated = weighted_norm(Eigen::VectorXd(a * u), v);
        if (std::abs(updated - estimate) <= tolerance * std::max(1.0, updated)) return updated;
        estimate = updated;
    }
    return estimate;
}

double spectral_norm(const Eigen::MatrixXd& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues()(0);
}

double weighted_singular_contraction(const AugmentedSystem& aug) {
    const Eigen::VectorXd root = aug.pi().cwiseSqrt();
    const Eigen::MatrixXd m = root.cwiseInverse().asDiagonal() * aug.xi() * root.asDiagonal();
    if (m.rows() < 2) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(1);
}

double second_eigenvalue_modulus(const AugmentedSystem& aug) {
    const Eigen::MatrixXd deflated = aug.xi() - aug.xi_inf();
    Eigen::EigenSolver<Eigen::MatrixXd> es(deflated, false);
    if (es.info() != Eigen::Success) throw AnalysisError("eigenvalue solver failed on Xi - Xi_inf");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::string to_string(SigmaMethod m) {
    return m == SigmaMethod::second_eigenvalue ? "second-eigenvalue" : "weighted-singular";
}

SigmaMethod parse_sigma_method(const std::string& s) {
    if (s == "second-eigenvalue") return SigmaMethod::second_eigenvalue;
    if (s == "weighted-singular") return SigmaMethod::weighted_singular;
    throw DomainError("unknown sigma method '" + s + "' (expected second-eigenvalue or weighted-singular)");
}

double compute_sigma(const AugmentedSystem& aug, SigmaMethod method) {
    const double sigma = method == SigmaMethod::second_eigenvalue ? second_eigenvalue_modulus(aug)
                                                                  : weighted_singular_contraction(aug);
    if (sigma >= 1.0 - 1e-12) {
        throw AnalysisError("contraction factor sigma = " + std::to_string(sigma) + " (" + to_string(method) +
                                ") is not below 1: no step-size bound exists",
                            sigma);
    }
    return sigma;
}

NormConstants compute_norm_constants(const AugmentedSystem& aug) {
    const auto nb = static_cast<Eigen::Index>(aug.n_bar());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(nb, nb);
    return {spectral_norm(id - aug.xi_inf()), spectral_norm(aug.xi() - id)};
}

YBounds estimate_y_bounds(const AugmentedSystem& aug, std::size_t burn_in, std::size_t horizon) {
    if (burn_in < aug.tau_bar() + 1 || horizon <= burn_in) {
        throw DomainError("estimate_y_bounds needs horizon > burn_in >= tau_bar + 1");
    }
    const auto nb = static_cast<Eigen::Index>(aug.n_bar());
    Eigen::VectorXd y = Eigen::VectorXd::Zero(nb);
    y.head(static_cast<Eigen::Index>(aug.actual_count())).setOnes();

    YBounds b{y.maxCoeff(), 0.0};
    for (std::size_t k = 1; k <= horizon; ++k) {
        y = aug.xi() * y;
        b.y_sup = std::max(b.y_sup, y.maxCoeff());
        if (k < burn_in) continue;
        double min_positive = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < nb; ++i) {
            if (y(i) > 0.0) {
                min_positive = std::min(min_positive, y(i));
            } else if (aug.pruned()) {
                throw StructuralError("augmented node " + std::to_string(i) + " still has y = 0 at step " +
                                      std::to_string(k) + " on a pruned system");
            }
        }
        if (std::isfinite(min_positive)) b.y_tilde = std::max(b.y_tilde, 1.0 / min_positive);
    }
    return b;
}

double ConvergenceConstants::zeta(double alpha) const {
    return std::abs(1.0 - static_cast<double>(n_bar) * alpha * lipschitz);
}

double ConvergenceConstants::chi(double alpha) const {
    return std::abs(1.0 - static_cast<double>(n_bar) * alpha * strong_convexity);
}

double ConvergenceConstants::eta(double alpha) const { return std::max(zeta(alpha), chi(alpha)); }

ConvergenceConstants derive_constants(const AugmentedSystem& aug, const CurvatureConstants& curvature,
                                      const ConstantOverrides& o, const DeriveOptions& options) {
    ConvergenceConstants cc;
    cc.n_bar = aug.n_bar();
    cc.c = o.c.value_or(1.0);
    cc.d = o.d.value_or(1.0);
    cc.lipschitz = o.lipschitz.value_or(curvature.lipschitz);
    cc.strong_convexity = o.strong_convexity.value_or(curvature.strong_convexity);
    cc.sigma = o.sigma ? *o.sigma : compute_sigma(aug, options.sigma_method);
    if (!o.epsilon || !o.xi_norm) {
        const auto norms = compute_norm_constants(aug);
        cc.epsilon = o.epsilon.value_or(norms.epsilon);
        cc.xi_norm = o.xi_norm.value_or(norms.xi_norm);
    } else {
        cc.epsilon = *o.epsilon;
        cc.xi_norm = *o.xi_norm;
    }
    if (!o.y_sup || !o.y_tilde) {
        const std::size_t burn_in = aug.tau_bar() + 1;
        const auto yb = estimate_y_bounds(aug, burn_in, std::max(options.y_horizon, burn_in + 1));
        cc.y_sup = o.y_sup.value_or(yb.y_sup);
        cc.y_tilde = o.y_tilde.value_or(yb.y_tilde);
    } else {
        cc.y_sup = *o.y_sup;
        cc.y_tilde = *o.y_tilde;
    }
    return cc;
}

StepSizeBound step_size_bound(const ConvergenceConstants& cc) {
    for (double v : {cc.c, cc.d, cc.lipschitz, cc.strong_convexity, cc.y_sup, cc.y_tilde, cc.epsilon}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("step-size bound needs positive finite constants");
    }
    if (!(cc.xi_norm >= 0.0) || cc.n_bar == 0) throw DomainError("step-size bound needs xi >= 0 and n_bar >= 1");
    if (!(cc.sigma >= 0.0)) throw DomainError("sigma must be non-negative");
    if (cc.sigma >= 1.0) {
        throw AnalysisError("sigma = " + std::to_string(cc.sigma) + " >= 1: no positive step-size bound exists",
                            cc.sigma);
    }
    const double nb = static_cast<double>(cc.n_bar);
    const double L = cc.lipschitz;
    const double mu = cc.strong_convexity;
    const double gap = 1.0 - cc.sigma;

    StepSizeBound b;
    b.delta = nb * mu * cc.c * cc.d * cc.epsilon * L * cc.y_tilde * (gap + cc.xi_norm);
    b.theta = cc.c * cc.d * cc.epsilon * L * L * cc.y_sup * cc.y_tilde * cc.y_tilde * (L + nb * mu);
    b.curvature_branch = (std::sqrt(b.delta * b.delta + 4.0 * nb * mu * gap * gap * b.theta) - b.delta) / (2.0 * b.theta);
    b.lipschitz_branch = 1.0 / (nb * L);
    b.alpha_bar = std::min(b.curvature_branch, b.lipschitz_branch);
    return b;
}

double alpha_bar(const ConvergenceConstants& cc) { return step_size_bound(cc).alpha_bar; }

Eigen::Matrix3d build_G(const ConvergenceConstants& cc, double alpha) {
    const double L = cc.lipschitz;
    const double cde = cc.c * cc.d * cc.epsilon;
    const double yt = cc.y_tilde;
    Eigen::Matrix3d g;
    g << cc.sigma, 0.0, alpha,
         alpha * cc.c * L * yt, cc.eta(alpha), 0.0,
         cde * L * yt * (cc.xi_norm + alpha * L * cc.y_sup * yt), alpha * cc.d * cc.epsilon * L * L * cc.y_sup * yt,
         cc.sigma + alpha * cde * L * yt;
    return g;
}

namespace {

// Monic cubic lambda^3 + a2 lambda^2 + a1 lambda + a0.
struct Cubic {
    double a2, a1, a0;

    double operator()(double x) const { return ((x + a2) * x + a1) * x + a0; }
    double derivative(double x) const { return (3.0 * x + 2.0 * a2) * x + a1; }
};

double polish(const Cubic& p, double x) {
    for (int i = 0; i < 8; ++i) {
        const double d = p.derivative(x);
        if (d == 0.0) break;
        const double step = p(x) / d;
        const double next = x - step;
        if (std::abs(p(next)) >= std::abs(p(x))) break;
        x = next;
    }
    return x;
}

double real_root(const Cubic& p) {
    const double shift = p.a2 / 3.0;
    const double pp = p.a1 - p.a2 * p.a2 / 3.0;
    const double qq = 2.0 * p.a2 * p.a2 * p.a2 / 27.0 - p.a2 * p.a1 / 3.0 + p.a0;
    const double disc = qq * qq / 4.0 + pp * pp * pp / 27.0;
    double t = 0.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        t = std::cbrt(-qq / 2.0 + s) + std::cbrt(-qq / 2.0 - s);
    } else if (pp < 0.0) {
        // three real roots; take the one of largest magnitude for a stable deflation
        const double r = std::sqrt(-pp / 3.0);
        const double arg = std::clamp(-qq / (2.0 * r * r * r), -1.0, 1.0);
        const double phi = std::acos(arg);
        double best = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double cand = 2.0 * r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0);
            if (std::abs(cand - shift) > std::abs(best - shift) || k == 0) best = cand;
        }
        t = best;
    }
    return polish(p, t - shift);
}

}  // namespace

double spectral_radius(const Eigen::Matrix3d& g) {
    const double trace = g.trace();
    const double minors = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0) +
                          g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1);
    const Cubic p{-trace, minors, -g.determinant()};

    const double r = real_root(p);
    // lambda^2 + b lambda + c = p(lambda) / (lambda - r)
    const double b = p.a2 + r;
    const double c = p.a1 + b * r;
    const double disc = b * b - 4.0 * c;
    double rho = std::abs(r);
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        double r1 = q;
        double r2 = q != 0.0 ? c / q : 0.0;
        rho = std::max({rho, std::abs(polish(p, r1)), std::abs(polish(p, r2))});
    } else {
        rho = std::max(rho, std::sqrt(c));
    }
    return rho;
}

AlphaSweep sweep_alpha(const ConvergenceConstants& cc, std::span<const double> grid) {
    if (grid.empty()) throw DomainError("sweep_alpha needs a non-empty grid");
    AlphaSweep sweep;
    sweep.points.reserve(grid.size());
    for (double alpha : grid) {
        if (!(alpha > 0.0)) throw DomainError("sweep_alpha grid points must be positive");
        sweep.points.push_back({alpha, spectral_radius(build_G(cc, alpha))});
    }
    const auto best = std::min_element(sweep.points.begin(), sweep.points.end(),
                                       [](const SweepPoint& a, const SweepPoint& b) { return a.rho < b.rho; });
    sweep.argmin_alpha = best->alpha;
    sweep.min_rho = best->rho;
    return sweep;
}

std::vector<double> log_spaced_grid(double alpha_bar, std::size_t count, double decades) {
    if (!(alpha_bar > 0.0) || count == 0 || !(decades > 0.0)) {
        throw DomainError("log_spaced_grid needs alpha_bar > 0, count >= 1, decades > 0");
    }
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = 1.0 - static_cast<double>(i) / static_cast<double>(count);
        grid[i] = alpha_bar * std::pow(10.0, -decades * frac);
    }
    return grid;
}

}  // namespace raddopt
