#pragma once

#include <Eigen/Dense>

namespace comove {

// AR(1) mean parameters. tau multiplies the contemporaneous TB yield and
// enters only the last equation (PFB-TB).
struct MeanParams {
    Eigen::VectorXd mu;
    Eigen::VectorXd phi;
    double tau = 0.0;

    int dim() const { return static_cast<int>(mu.size()); }
};

// Per-series GARCH(1,1) parameters: h_t = omega + kappa r_{t-1}^2 + lambda h_{t-1}.
struct GarchParams {
    Eigen::VectorXd omega;
    Eigen::VectorXd kappa;
    Eigen::VectorXd lambda;

    int dim() const { return static_cast<int>(omega.size()); }
};

// DCC(1,1) parameters. S is the unconditional correlation target, nu the
// Student-t shape shared across series.
struct DccParams {
    double alpha = 0.0;
    double beta = 0.0;
    Eigen::MatrixXd S;
    double nu = 8.0;

    int dim() const { return static_cast<int>(S.rows()); }
};

struct SystemParams {
    MeanParams mean;
    GarchParams variance;
    DccParams correlation;

    int dim() const { return mean.dim(); }
};

// Invariant checks. Each returns a diagnostic string on violation, empty
// string when valid; validate_* throws EstimationError on violation.
std::string check_mean(const MeanParams& p);
std::string check_garch(const GarchParams& p);
std::string check_dcc(const DccParams& p);
std::string check_system(const SystemParams& p);

void validate_mean(const MeanParams& p);
void validate_garch(const GarchParams& p);
void validate_dcc(const DccParams& p);
void validate_system(const SystemParams& p);

// The reference parameterization used as simulation ground truth throughout
// the test suite: the penta-variate estimates of the reference study plus a
// fixed moderate-correlation target (the study does not report its S).
SystemParams reference_params();

}  // namespace comove
