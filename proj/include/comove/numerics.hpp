#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace comove {

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Parallelism cap for the finite-difference kernels, from COMOVE_THREADS.
// 0 selects the serial reference path; unset means all hardware threads.
// Parallel and serial paths produce bit-identical results because every
// coordinate evaluation is independent and writes only its own slot.
int effective_threads();

// Central-difference gradient with per-coordinate step h * max(1, |x_i|).
// The 2*dim objective evaluations run in parallel when threads allow.
Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double h = 1e-5);

// Serial reference implementation, kept for testing the parallel kernel.
Eigen::VectorXd fd_gradient_serial(const Objective& f, const Eigen::VectorXd& x,
                                   double h = 1e-5);

// Central second differences, symmetric by construction; evaluations of the
// dim*(dim+1)/2 upper-triangle entries run in parallel.
Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x, double h = 1e-4);
Eigen::MatrixXd fd_hessian_serial(const Objective& f, const Eigen::VectorXd& x,
                                  double h = 1e-4);

struct BfgsOptions {
    int max_iterations = 500;
    double gradient_tolerance = 1e-5;  // infinity norm in the search space
    double step_tolerance = 1e-9;      // relative accepted step
    double fd_step = 1e-5;
};

struct BfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    Eigen::VectorXd gradient;
    double gradient_inf_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    // Objective value after every accepted step (non-increasing).
    std::vector<double> accepted_values;
};

// Quasi-Newton (BFGS) minimizer with backtracking Armijo line search and
// finite-difference gradients. Accepted objective values are monotone
// non-increasing. Converged means the gradient infinity norm fell at or
// below gradient_tolerance and the last relative step below step_tolerance.
// An optional callback runs after every accepted step (used for correlation
// re-targeting); it may mutate the objective's captured state.
BfgsResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0,
                         const BfgsOptions& options = {},
                         const std::function<void(const Eigen::VectorXd&)>& on_step = {});

}  // namespace comove
