#include "raddopt/matrix_engine.hpp"

#include <cmath>

#include "raddopt/error.hpp"

namespace raddopt {

MatrixEngine::MatrixEngine(const AugmentedSystem& aug, ObjectiveSet objectives, std::span<const double> x0,
                           double alpha)
    : aug_(&aug), objectives_(std::move(objectives)), alpha_(alpha) {
    const std::size_t n = aug.actual_count();
    if (x0.size() != n) throw StructuralError("x0 length does not match actual node count");
    if (objectives_.size() != n) throw StructuralError("one objective per actual node is required");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("step-size must be finite and >= 0");

    const auto nb = static_cast<Eigen::Index>(aug.n_bar());
    x_ = Eigen::VectorXd::Zero(nb);
    y_ = Eigen::VectorXd::Zero(nb);
    for (std::size_t j = 0; j < n; ++j) {
        x_(static_cast<Eigen::Index>(j)) = x0[j];
        y_(static_cast<Eigen::Index>(j)) = 1.0;
    }
    z_ = Eigen::VectorXd::Zero(nb);
    grad_ = Eigen::VectorXd::Zero(nb);
    refresh_z_and_grad();
    w_ = grad_;
}

void MatrixEngine::refresh_z_and_grad() {
    const auto n = static_cast<Eigen::Index>(aug_->actual_count());
    for (Eigen::Index i = 0; i < x_.size(); ++i) z_(i) = y_(i) != 0.0 ? x_(i) / y_(i) : 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!(y_(j) > 0.0)) {
            throw InvariantViolation("y became non-positive at actual node " + std::to_string(j + 1));
        }
        grad_(j) = objectives_[static_cast<std::size_t>(j)]->gradient(z_(j));
    }
}

void MatrixEngine::step() {
    const Eigen::MatrixXd& xi = aug_->xi();
    const Eigen::VectorXd grad_prev = grad_;
    x_ = xi * x_ - alpha_ * w_;
    y_ = xi * y_;
    refresh_z_and_grad();
    w_ = xi * w_ + grad_ - grad_prev;
    ++k_;
}

std::vector<double> MatrixEngine::actual_z() const {
    const auto n = static_cast<Eigen::Index>(aug_->actual_count());
    return {z_.data(), z_.data() + n};
}

namespace {

void check_divergence(std::size_t k, const Eigen::VectorXd& x, const Eigen::VectorXd& w, double bound) {
    if (!x.allFinite() || !w.allFinite()) throw DivergenceError(k, std::nan(""));
    const double worst = std::max(x.cwiseAbs().maxCoeff(), w.cwiseAbs().maxCoeff());
    if (worst > bound) throw DivergenceError(k, worst);
}

AugmentedSnapshot snapshot(const MatrixEngine& e) {
    auto v = [](const Eigen::VectorXd& a) { return std::vector<double>(a.data(), a.data() + a.size()); };
    return {v(e.x()), v(e.y()), v(e.z()), v(e.w())};
}

}  // namespace

Trace radd_opt_run_matrix(const AugmentedSystem& aug, const ObjectiveSet& objectives, std::span<const double> x0,
                          double alpha, double x_star, const RunOptions& options) {
    MatrixEngine engine(aug, objectives, x0, alpha);
    Trace trace;
    trace.meta.algorithm = "radd-opt-matrix";
    trace.meta.alpha = alpha;
    trace.meta.delay_model = "fixed(tau_bar=" + std::to_string(aug.tau_bar()) + ")";
    trace.meta.x_star = x_star;
    trace.append(engine.actual_z());
    if (options.record_augmented) trace.append_snapshot(snapshot(engine));
    for (std::size_t it = 0; it < options.max_iter; ++it) {
        if (options.tol && trace.final_residual() <= *options.tol) {
            trace.converged = true;
            return trace;
        }
        engine.step();
        check_divergence(engine.k(), engine.x(), engine.w(), options.divergence_bound);
        trace.append(engine.actual_z());
        if (options.record_augmented) trace.append_snapshot(snapshot(engine));
    }
    trace.converged = options.tol && trace.final_residual() <= *options.tol;
    return trace;
}

Trace add_opt_run(const WeightMatrix& weights, const ObjectiveSet& objectives, std::span<const double> x0,
                  double alpha, double x_star, const RunOptions& options) {
    const auto n = static_cast<Eigen::Index>(weights.size());
    if (static_cast<Eigen::Index>(x0.size()) != n || static_cast<Eigen::Index>(objectives.size()) != n) {
        throw StructuralError("x0 and objectives must have one entry per node");
    }
    const Eigen::MatrixXd& p = weights.matrix();
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);
    Eigen::VectorXd y = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd z = x;
    Eigen::VectorXd g(n);
    for (Eigen::Index j = 0; j < n; ++j) g(j) = objectives[static_cast<std::size_t>(j)]->gradient(z(j));
    Eigen::VectorXd w = g;

    Trace trace;
    trace.meta.algorithm = "add-opt";
    trace.meta.alpha = alpha;
    trace.meta.delay_model = "none";
    trace.meta.x_star = x_star;
    trace.append(std::vector<double>(z.data(), z.data() + n));
    for (std::size_t it = 0; it < options.max_iter; ++it) {
        if (options.tol && trace.final_residual() <= *options.tol) {
            trace.converged = true;
            return trace;
        }
        x = p * x - alpha * w;
        y = p * y;
        z = x.cwiseQuotient(y);
        Eigen::VectorXd g_next(n);
        for (Eigen::Index j = 0; j < n; ++j) g_next(j) = objectives[static_cast<std::size_t>(j)]->gradient(z(j));
        w = p * w + g_next - g;
        g = std::move(g_next);
        check_divergence(it + 1, x, w, options.divergence_bound);
        trace.append(std::vector<double>(z.data(), z.data() + n));
    }
    trace.converged = options.tol && trace.final_residual() <= *options.tol;
    return trace;
}

}  // namespace raddopt
