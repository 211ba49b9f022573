#pragma once

#include <span>

#include <Eigen/Dense>

#include "raddopt/augmented.hpp"
#include "raddopt/objectives.hpp"
#include "raddopt/trace.hpp"

namespace raddopt {

// Augmented matrix iteration
//   x^ <- Xi x^ - a w^,  y^ <- Xi y^,  z^ <- Y^-1 x^,  w^ <- Xi w^ + grad(z^+) - grad(z^)
// with gradients of virtual nodes pinned to zero. Virtual z entries whose y is zero are
// reported as 0 and never fed to a gradient.
class MatrixEngine {
public:
    MatrixEngine(const AugmentedSystem& aug, ObjectiveSet objectives, std::span<const double> x0, double alpha);

    void step();

    std::size_t k() const noexcept { return k_; }
    const Eigen::VectorXd& x() const noexcept { return x_; }
    const Eigen::VectorXd& y() const noexcept { return y_; }
    const Eigen::VectorXd& z() const noexcept { return z_; }
    const Eigen::VectorXd& w() const noexcept { return w_; }
    const Eigen::VectorXd& grad() const noexcept { return grad_; }
    std::vector<double> actual_z() const;

private:
    void refresh_z_and_grad();

    const AugmentedSystem* aug_;
    ObjectiveSet objectives_;
    double alpha_;
    Eigen::VectorXd x_, y_, z_, w_, grad_;
    std::size_t k_ = 0;
};

Trace radd_opt_run_matrix(const AugmentedSystem& aug, const ObjectiveSet& objectives, std::span<const double> x0,
                          double alpha, double x_star, const RunOptions& options = {});

// Delay-free ADD-OPT: x <- P x - a w, y <- P y, z = x / y, w <- P w + grad(z+) - grad(z).
Trace add_opt_run(const WeightMatrix& weights, const ObjectiveSet& objectives, std::span<const double> x0,
                  double alpha, double x_star, const RunOptions& options = {});

}  // namespace raddopt
