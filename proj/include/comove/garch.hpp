#pragma once

#include <Eigen/Dense>

#include "comove/params.hpp"

namespace comove {

// GARCH(1,1) variance recursion per series:
//   h_{i,1} = h_init_i,  h_{i,t} = omega_i + kappa_i r_{i,t-1}^2 + lambda_i h_{i,t-1}.
// r is T x dim (one column per series); result has the same shape. The per
// series recursions are independent; outputs are strictly positive under the
// parameter invariants.
Eigen::MatrixXd garch_filter(const Eigen::MatrixXd& r, const GarchParams& params,
                             const Eigen::VectorXd& h_init);

// epsilon_{i,t} = r_{i,t} / sqrt(h_{i,t}); requires h > 0 elementwise.
Eigen::MatrixXd standardize(const Eigen::MatrixXd& r, const Eigen::MatrixXd& h);

// Column-wise sample variance (about the mean), the default h_init policy.
Eigen::VectorXd sample_variance(const Eigen::MatrixXd& r);

}  // namespace comove
