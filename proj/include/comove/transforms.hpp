#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "comove/params.hpp"

namespace comove {

// Bijection between the open constraint set and R^29, coordinate layout:
//   [0..4]   mu_i                (identity)
//   [5..9]   phi_i               (arctanh, |phi| < 1)
//   [10]     tau                 (identity)
//   [11..15] log omega_i
//   [16..20] log(kappa_i / (1 - kappa_i - lambda_i))
//   [21..25] log(lambda_i / (1 - kappa_i - lambda_i))
//   [26]     log(alpha / (1 - alpha - beta))
//   [27]     log(beta  / (1 - alpha - beta))
//   [28]     log(nu - 2)
// The correlation target S is not optimized (correlation targeting) and is
// carried alongside the vector.
inline constexpr int kThetaDim = 29;

// Throws EstimationError when params sit on or outside the open set
// (e.g. kappa = 0 or kappa + lambda >= 1).
Eigen::VectorXd to_unconstrained(const SystemParams& params);

// Total on R^29: every finite theta maps to valid interior params.
SystemParams from_unconstrained(const Eigen::VectorXd& theta, const Eigen::MatrixXd& S);

// Natural-parameter packing used for reporting and delta-method standard
// errors: [mu(5), phi(5), tau, omega(5), kappa(5), lambda(5), alpha, beta, nu].
Eigen::VectorXd pack_natural(const SystemParams& params);
const std::vector<std::string>& natural_names();

}  // namespace comove
