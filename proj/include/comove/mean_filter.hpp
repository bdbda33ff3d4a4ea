#pragma once

#include <Eigen/Dense>

#include "comove/data_pipeline.hpp"
#include "comove/params.hpp"

namespace comove {

// AR(1) innovations. Row t of the result is the innovation of panel week
// t+2 (the first panel week only seeds the lag): for i < dim-1
//   r_{i,t} = x_{i,t} - mu_i - phi_i x_{i,t-1}
// and for the last series the contemporaneous TB yield enters,
//   r_{5,t} = x_{5,t} - mu_5 - phi_5 x_{5,t-1} - tau B_t.
// Result is (T-1) x dim.
Eigen::MatrixXd mean_filter(const SpreadPanel& panel, const MeanParams& params);

// Inverse filter: rebuilds the level series from innovations, an initial
// week x0 and the covariate series b (length T = rows(r) + 1; b[0] pairs
// with x0 and does not enter any innovation). Result is T x dim including
// the seed row. mean_filter of the rebuilt panel returns r up to round-off.
Eigen::MatrixXd mean_unfilter(const Eigen::MatrixXd& r, const MeanParams& params,
                              const Eigen::VectorXd& x0, const Eigen::VectorXd& b);

}  // namespace comove
